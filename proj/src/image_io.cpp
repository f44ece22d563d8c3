#include "tvpwl/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace tvpwl {

namespace {

constexpr char kRawMagic[8] = {'T', 'V', 'P', 'W', 'L', 'R', 'A', 'W'};

std::string lower_extension(const std::string& path)
{
    std::string ext = std::filesystem::path(path).extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::uint8_t quantise_u8(double v)
{
    const double r = std::round(v); // half away from zero
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

// All writers go through a temp file in the same directory so a crash never
// leaves a half-written output behind.
class AtomicWriter {
public:
    explicit AtomicWriter(const std::string& path)
        : final_path_(path), tmp_path_(path + ".tmp"), out_(tmp_path_, std::ios::binary)
    {
        if (!out_)
            throw std::runtime_error("cannot open for writing: " + tmp_path_);
    }

    std::ofstream& stream() { return out_; }

    void commit()
    {
        out_.flush();
        if (!out_)
            throw std::runtime_error("write failed: " + tmp_path_);
        out_.close();
        std::filesystem::rename(tmp_path_, final_path_);
        committed_ = true;
    }

    ~AtomicWriter()
    {
        if (!committed_) {
            std::error_code ec;
            std::filesystem::remove(tmp_path_, ec);
        }
    }

private:
    std::string final_path_;
    std::string tmp_path_;
    std::ofstream out_;
    bool committed_ = false;
};

void put_u32_le(std::ofstream& out, std::uint32_t v)
{
    const std::uint8_t bytes[4] = {
        static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
        static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32_le(std::istream& in)
{
    std::uint8_t bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    return static_cast<std::uint32_t>(bytes[0]) | static_cast<std::uint32_t>(bytes[1]) << 8 |
           static_cast<std::uint32_t>(bytes[2]) << 16 |
           static_cast<std::uint32_t>(bytes[3]) << 24;
}

int next_pnm_token(std::istream& in, std::string& token)
{
    token.clear();
    int c = in.get();
    while (c != EOF) {
        if (c == '#') { // comment runs to end of line
            while (c != EOF && c != '\n')
                c = in.get();
        } else if (std::isspace(c)) {
            if (!token.empty())
                return 0;
        } else {
            token.push_back(static_cast<char>(c));
        }
        c = in.get();
    }
    return token.empty() ? -1 : 0;
}

} // namespace

ScalarField read_raw(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kRawMagic, 8) != 0)
        throw std::runtime_error("corrupt header (bad magic): " + path);
    const std::uint32_t rows = get_u32_le(in);
    const std::uint32_t cols = get_u32_le(in);
    if (!in || rows == 0 || cols == 0 || rows > (1u << 20) || cols > (1u << 20))
        throw std::runtime_error("corrupt header (bad shape): " + path);
    std::vector<double> data(static_cast<std::size_t>(rows) * cols);
    static_assert(sizeof(double) == 8);
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in)
        throw std::runtime_error("truncated payload: " + path);
    return ScalarField(static_cast<int>(rows), static_cast<int>(cols), std::move(data));
}

void write_raw(const std::string& path, const ScalarField& img)
{
    AtomicWriter writer(path);
    std::ofstream& out = writer.stream();
    out.write(kRawMagic, 8);
    put_u32_le(out, static_cast<std::uint32_t>(img.rows()));
    put_u32_le(out, static_cast<std::uint32_t>(img.cols()));
    out.write(reinterpret_cast<const char*>(img.data()),
              static_cast<std::streamsize>(img.size() * sizeof(double)));
    writer.commit();
}

ScalarField read_pgm(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::string token;
    if (next_pnm_token(in, token) != 0 || token != "P5")
        throw std::runtime_error("unsupported format (expected P5): " + path);
    long width = 0, height = 0, maxval = 0;
    try {
        if (next_pnm_token(in, token) != 0)
            throw std::runtime_error("eof");
        width = std::stol(token);
        if (next_pnm_token(in, token) != 0)
            throw std::runtime_error("eof");
        height = std::stol(token);
        if (next_pnm_token(in, token) != 0)
            throw std::runtime_error("eof");
        maxval = std::stol(token);
    } catch (const std::exception&) {
        throw std::runtime_error("corrupt header: " + path);
    }
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 65535)
        throw std::runtime_error("corrupt header: " + path);

    const int M = static_cast<int>(height), N = static_cast<int>(width);
    ScalarField img(M, N);
    const std::size_t n_px = img.size();
    if (maxval < 256) {
        std::vector<std::uint8_t> buf(n_px);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n_px));
        if (!in)
            throw std::runtime_error("truncated payload: " + path);
        const double scale = 255.0 / static_cast<double>(maxval);
        for (std::size_t k = 0; k < n_px; ++k)
            img.data()[k] = buf[k] * scale;
    } else {
        std::vector<std::uint8_t> buf(n_px * 2);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n_px * 2));
        if (!in)
            throw std::runtime_error("truncated payload: " + path);
        const double scale = 255.0 / static_cast<double>(maxval);
        for (std::size_t k = 0; k < n_px; ++k) {
            const unsigned v = static_cast<unsigned>(buf[2 * k]) << 8 | buf[2 * k + 1];
            img.data()[k] = v * scale;
        }
    }
    return img;
}

void write_pgm(const std::string& path, const ScalarField& img)
{
    AtomicWriter writer(path);
    std::ofstream& out = writer.stream();
    out << "P5\n" << img.cols() << " " << img.rows() << "\n255\n";
    std::vector<std::uint8_t> buf(img.size());
    for (std::size_t k = 0; k < img.size(); ++k)
        buf[k] = quantise_u8(img.data()[k]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    writer.commit();
}

namespace {

struct PngReadCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngReadCloser()
    {
        if (png)
            png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp)
            std::fclose(fp);
    }
};

struct PngWriteCloser {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;
    ~PngWriteCloser()
    {
        if (png)
            png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp)
            std::fclose(fp);
    }
};

} // namespace

ScalarField read_png(const std::string& path)
{
    PngReadCloser ctx;
    ctx.fp = std::fopen(path.c_str(), "rb");
    if (!ctx.fp)
        throw std::runtime_error("cannot open: " + path);
    png_byte header[8];
    if (std::fread(header, 1, 8, ctx.fp) != 8 || png_sig_cmp(header, 0, 8) != 0)
        throw std::runtime_error("corrupt header (not a PNG): " + path);
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    ctx.info = ctx.png ? png_create_info_struct(ctx.png) : nullptr;
    if (!ctx.png || !ctx.info)
        throw std::runtime_error("libpng init failed");
    if (setjmp(png_jmpbuf(ctx.png)))
        throw std::runtime_error("corrupt PNG: " + path);
    png_init_io(ctx.png, ctx.fp);
    png_set_sig_bytes(ctx.png, 8);
    png_read_info(ctx.png, ctx.info);

    const png_uint_32 width = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 height = png_get_image_height(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);
    int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    if (color_type != PNG_COLOR_TYPE_GRAY)
        throw std::runtime_error("unsupported format (grey-scale PNG required): " + path);
    if (bit_depth < 8) {
        png_set_expand_gray_1_2_4_to_8(ctx.png);
        bit_depth = 8;
    }
    png_set_interlace_handling(ctx.png);
    png_read_update_info(ctx.png, ctx.info);

    const std::size_t row_bytes = png_get_rowbytes(ctx.png, ctx.info);
    std::vector<std::uint8_t> pixels(row_bytes * height);
    std::vector<png_bytep> rows(height);
    for (png_uint_32 i = 0; i < height; ++i)
        rows[i] = pixels.data() + i * row_bytes;
    png_read_image(ctx.png, rows.data());

    ScalarField img(static_cast<int>(height), static_cast<int>(width));
    if (bit_depth == 8) {
        for (png_uint_32 i = 0; i < height; ++i)
            for (png_uint_32 j = 0; j < width; ++j)
                img(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    } else { // 16-bit samples are big-endian in the PNG stream
        const double scale = 255.0 / 65535.0;
        for (png_uint_32 i = 0; i < height; ++i)
            for (png_uint_32 j = 0; j < width; ++j) {
                const unsigned v =
                    static_cast<unsigned>(rows[i][2 * j]) << 8 | rows[i][2 * j + 1];
                img(static_cast<int>(i), static_cast<int>(j)) = v * scale;
            }
    }
    return img;
}

void write_png(const std::string& path, const ScalarField& img)
{
    const std::string tmp_path = path + ".tmp";
    {
        PngWriteCloser ctx;
        ctx.fp = std::fopen(tmp_path.c_str(), "wb");
        if (!ctx.fp)
            throw std::runtime_error("cannot open for writing: " + tmp_path);
        ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        ctx.info = ctx.png ? png_create_info_struct(ctx.png) : nullptr;
        if (!ctx.png || !ctx.info)
            throw std::runtime_error("libpng init failed");
        if (setjmp(png_jmpbuf(ctx.png)))
            throw std::runtime_error("PNG write failed: " + path);
        png_init_io(ctx.png, ctx.fp);
        png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(img.cols()),
                     static_cast<png_uint_32>(img.rows()), 8, PNG_COLOR_TYPE_GRAY,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(ctx.png, ctx.info);
        std::vector<std::uint8_t> row(img.cols());
        for (int i = 0; i < img.rows(); ++i) {
            for (int j = 0; j < img.cols(); ++j)
                row[j] = quantise_u8(img(i, j));
            png_write_row(ctx.png, row.data());
        }
        png_write_end(ctx.png, ctx.info);
    }
    std::filesystem::rename(tmp_path, path);
}

ScalarField read_image(const std::string& path)
{
    const std::string ext = lower_extension(path);
    if (ext == ".png")
        return read_png(path);
    if (ext == ".pgm")
        return read_pgm(path);
    if (ext == ".raw")
        return read_raw(path);
    throw std::runtime_error("unsupported format (use .png, .pgm or .raw): " + path);
}

void write_image(const std::string& path, const ScalarField& img)
{
    const std::string ext = lower_extension(path);
    if (ext == ".png")
        return write_png(path, img);
    if (ext == ".pgm")
        return write_pgm(path, img);
    if (ext == ".raw")
        return write_raw(path, img);
    throw std::runtime_error("unsupported format (use .png, .pgm or .raw): " + path);
}

} // namespace tvpwl
