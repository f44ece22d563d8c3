#include "tvpwl/cli.hpp"

#include "tvpwl/checks.hpp"
#include "tvpwl/gamma_estimate.hpp"
#include "tvpwl/image_io.hpp"
#include "tvpwl/metrics.hpp"
#include "tvpwl/solver.hpp"
#include "tvpwl/synthetic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace tvpwl::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitUsage = 64;

std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : s) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string format_double(const char* fmt, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot open for writing: " + tmp);
        out << text;
        if (!out)
            throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

ScalarField difference(const ScalarField& a, const ScalarField& b)
{
    ScalarField out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k)
        out.data()[k] = a.data()[k] - b.data()[k];
    return out;
}

// Shared numeric flags, defaults per the experiment setup.
struct CommonOptions {
    SolverParams solver;
    TgvParams tgv;
    GammaEstimateParams gamma;
};

void add_solver_flags(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--sigma", opts.solver.sigma, "Dual step size");
    cmd->add_option("--tau", opts.solver.tau, "Primal step size");
    cmd->add_option("--theta", opts.solver.theta, "Extrapolation weight in [0,1]");
    cmd->add_option("--tol", opts.solver.tol, "Residual exit tolerance");
    cmd->add_option("--max-iter", opts.solver.max_iter, "Iteration cap");
    cmd->add_option("--beta", opts.tgv.beta, "TGV^2 second-order weight");
    cmd->add_option("--lambda", opts.gamma.lambda, "Over-regularisation weight (gamma pipeline)");
    cmd->add_option("--rho", opts.gamma.rho, "Gaussian std for the residual filter (pixels)");
    cmd->add_option("--rof-tol", opts.gamma.rof_tol, "Inner ROF solve tolerance");
    cmd->add_option("--rof-max-iter", opts.gamma.rof_max_iter, "Inner ROF iteration cap");
}

nlohmann::json solver_params_json(const SolverParams& params, const SolveReport& report)
{
    return {
        {"sigma", report.sigma_used},  {"tau", report.tau_used},
        {"theta", params.theta},       {"tol", params.tol},
        {"max_iter", params.max_iter},
    };
}

nlohmann::json report_json(const SolveReport& report, bool with_history)
{
    nlohmann::json j{
        {"iterations", report.iterations},
        {"converged", report.converged},
        {"final_residual", report.final_residual},
        {"wall_time_s", report.wall_time},
    };
    if (with_history) {
        j["residual_history"] = report.residual_history;
        j["gap_history"] = report.gap_history;
    }
    return j;
}

void write_history_csv(const std::string& path, const SolveReport& report)
{
    std::string text = "iter,residual,gap\n";
    for (std::size_t k = 0; k < report.residual_history.size(); ++k) {
        text += std::to_string(k + 1);
        text += ',';
        text += format_double("%.9e", report.residual_history[k]);
        text += ',';
        text += format_double("%.9e", report.gap_history[k]);
        text += '\n';
    }
    write_text_atomic(path, text);
}

// ---------------------------------------------------------------- denoise --

struct DenoiseOptions {
    std::string input, output, report_path;
    std::string regulariser = "tvpwl";
    std::string gamma_source = "over-tv";
    std::string gamma_path, ground_truth_path;
    double delta = -1.0;
    double noise_sigma = -1.0;
    bool no_history = false;
    CommonOptions common;
};

int run_denoise(const DenoiseOptions& opts)
{
    if (opts.gamma_source == "file" && opts.gamma_path.empty()) {
        std::cerr << "denoise: --gamma-source file requires --gamma PATH\n";
        return kExitUsage;
    }
    if (opts.regulariser == "tvpwl" && opts.gamma_source == "gt" &&
        opts.ground_truth_path.empty()) {
        std::cerr << "denoise: --gamma-source gt requires --ground-truth PATH\n";
        return kExitUsage;
    }
    if (opts.delta < 0.0 && opts.noise_sigma < 0.0 && opts.ground_truth_path.empty()) {
        std::cerr << "denoise: need --delta, --noise-sigma or --ground-truth to fix the "
                     "fidelity radius\n";
        return kExitUsage;
    }

    const ScalarField f = read_image(opts.input);
    std::optional<ScalarField> gt;
    if (!opts.ground_truth_path.empty())
        gt = read_image(opts.ground_truth_path);

    double delta = opts.delta;
    std::string delta_source = "flag";
    if (delta < 0.0 && opts.noise_sigma >= 0.0) {
        delta = opts.noise_sigma * std::sqrt(static_cast<double>(f.size()));
        delta_source = "noise-sigma";
    }
    if (delta < 0.0) {
        delta = l2_norm(difference(f, *gt));
        delta_source = "ground-truth";
    }

    SolverParams params = opts.common.solver;
    params.record_history = !opts.no_history;

    nlohmann::json j{
        {"command", "denoise"},
        {"input", opts.input},
        {"output", opts.output},
        {"rows", f.rows()},
        {"cols", f.cols()},
        {"regulariser", opts.regulariser},
        {"delta", delta},
        {"delta_source", delta_source},
    };

    SolveReport report;
    if (opts.regulariser == "tv") {
        report = solve_tv(f, delta, params);
    } else if (opts.regulariser == "tgv") {
        report = solve_tgv2(f, delta, opts.common.tgv, params);
        j["beta"] = opts.common.tgv.beta;
    } else {
        ScalarField gamma;
        if (opts.gamma_source == "file") {
            gamma = read_image(opts.gamma_path);
            j["gamma_file"] = opts.gamma_path;
        } else if (opts.gamma_source == "gt") {
            gamma = gamma_from_ground_truth(*gt);
        } else {
            gamma = estimate_gamma_over_tv(f, opts.common.gamma);
            j["lambda"] = opts.common.gamma.lambda;
            j["rho"] = opts.common.gamma.rho;
            j["rof_tol"] = opts.common.gamma.rof_tol;
            j["rof_max_iter"] = opts.common.gamma.rof_max_iter;
        }
        j["gamma_source"] = opts.gamma_source;
        report = solve_tvpwl(f, gamma, delta, params);
    }

    write_image(opts.output, report.final_u);

    j.update(solver_params_json(params, report));
    j.update(report_json(report, params.record_history));
    if (gt) {
        const PsnrResult p = psnr(report.final_u, *gt);
        j["ssim"] = ssim(report.final_u, *gt);
        if (p.infinite)
            j["psnr_db"] = nullptr; // zero MSE
        else
            j["psnr_db"] = p.db;
        j["psnr_infinite"] = p.infinite;
    }
    const std::string report_path =
        opts.report_path.empty() ? opts.output + ".report.json" : opts.report_path;
    write_text_atomic(report_path, j.dump(2) + "\n");

    return report.converged ? kExitOk : kExitNoConverge;
}

// --------------------------------------------------------- estimate-gamma --

struct EstimateGammaOptions {
    std::string input, output;
    std::string source = "over-tv"; // or "gt": input is the ground truth
    CommonOptions common;
};

int run_estimate_gamma(const EstimateGammaOptions& opts)
{
    const ScalarField input = read_image(opts.input);
    ScalarField gamma;
    if (opts.source == "gt")
        gamma = gamma_from_ground_truth(input);
    else
        gamma = estimate_gamma_over_tv(input, opts.common.gamma);
    write_image(opts.output, gamma);
    return kExitOk;
}

// -------------------------------------------------------------- add-noise --

struct AddNoiseOptions {
    std::string input, output, report_path;
    bool synthetic = false;
    int synthetic_size = 256;
    std::string gt_out;
    double level = 0.10;
    double sigma_override = -1.0;
    double peak = 255.0;
    std::uint64_t seed = 1234;
};

int run_add_noise(const AddNoiseOptions& opts)
{
    if (opts.synthetic == !opts.input.empty()) {
        std::cerr << "add-noise: pass either --input PATH or --synthetic\n";
        return kExitUsage;
    }
    const ScalarField gt =
        opts.synthetic ? generate_synthetic(opts.synthetic_size, opts.synthetic_size)
                       : read_image(opts.input);
    if (!opts.gt_out.empty())
        write_image(opts.gt_out, gt);
    NoiseSpec spec;
    spec.level = opts.sigma_override >= 0.0 ? opts.sigma_override / opts.peak : opts.level;
    spec.seed = opts.seed;
    spec.peak = opts.peak;
    const NoisyImage noisy = add_gaussian_noise(gt, spec);
    write_image(opts.output, noisy.f);

    nlohmann::json j{
        {"command", "add-noise"},
        {"input", opts.synthetic ? "synthetic" : opts.input},
        {"output", opts.output},
        {"rows", gt.rows()},
        {"cols", gt.cols()},
        {"noise_level", spec.level},
        {"noise_sigma", spec.level * spec.peak},
        {"peak", spec.peak},
        {"seed", spec.seed},
        {"rng", kNoiseRngName},
        {"delta", noisy.delta},
    };
    const std::string report_path =
        opts.report_path.empty() ? opts.output + ".json" : opts.report_path;
    write_text_atomic(report_path, j.dump(2) + "\n");
    return kExitOk;
}

// -------------------------------------------------------------- benchmark --

struct BenchmarkOptions {
    bool synthetic = false;
    int synthetic_size = 256;
    std::string images_dir;
    std::string outdir;
    std::vector<double> noise_levels{0.10};
    std::uint64_t seed = 1234;
    double peak = 255.0;
    std::vector<std::string> methods{"tv", "tvpwl-over-tv", "tvpwl-gt", "tgv"};
    bool no_history = false;
    CommonOptions common;
};

struct BenchmarkJob {
    std::string image_id;
    double noise_level = 0.0;
    std::string method;       // tv | tvpwl | tgv
    std::string gamma_source; // none | over-tv | gt
    const ScalarField* gt = nullptr;
    const ScalarField* noisy = nullptr;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

struct BenchmarkRow {
    std::string text;       // full CSV row
    bool converged = false;
    bool failed = false;
    std::string error;
};

int method_rank(const std::string& method, const std::string& gamma_source)
{
    if (method == "tv")
        return 0;
    if (method == "tvpwl" && gamma_source == "over-tv")
        return 1;
    if (method == "tvpwl")
        return 2;
    return 3;
}

std::string method_tag(const BenchmarkJob& job)
{
    return job.gamma_source == "none" ? job.method : job.method + "-" + job.gamma_source;
}

BenchmarkRow run_benchmark_job(const BenchmarkJob& job, const BenchmarkOptions& opts)
{
    BenchmarkRow row;
    try {
        SolverParams params = opts.common.solver;
        params.record_history = !opts.no_history;

        SolveReport report;
        if (job.method == "tv") {
            report = solve_tv(*job.noisy, job.delta, params);
        } else if (job.method == "tgv") {
            report = solve_tgv2(*job.noisy, job.delta, opts.common.tgv, params);
        } else if (job.gamma_source == "gt") {
            report = solve_tvpwl(*job.noisy, gamma_from_ground_truth(*job.gt), job.delta,
                                 params);
        } else {
            report = solve_tvpwl(*job.noisy, estimate_gamma_over_tv(*job.noisy, opts.common.gamma),
                                 job.delta, params);
        }
        row.converged = report.converged;

        if (params.record_history) {
            const std::string history_path =
                opts.outdir + "/history_" + job.image_id + "_n" +
                format_double("%g", job.noise_level) + "_" + method_tag(job) + ".csv";
            write_history_csv(history_path, report);
        }

        const PsnrResult p = psnr(report.final_u, *job.gt);
        const double ssim_value = ssim(report.final_u, *job.gt);

        std::string text;
        text += job.image_id;
        text += ',' + format_double("%g", job.noise_level);
        text += ',' + job.method;
        text += ',' + job.gamma_source;
        text += ',' + format_double("%.6f", ssim_value);
        text += ',';
        text += p.infinite ? "inf" : format_double("%.4f", p.db);
        text += ',' + std::to_string(report.iterations);
        text += ',';
        text += report.converged ? "true" : "false";
        text += ',' + format_double("%.3f", report.wall_time);
        text += ',' + format_double("%.9g", report.sigma_used);
        text += ',' + format_double("%.9g", report.tau_used);
        text += ',' + format_double("%g", params.theta);
        text += ',' + format_double("%g", params.tol);
        text += ',' + format_double("%g", opts.common.tgv.beta);
        text += ',' + format_double("%g", opts.common.gamma.lambda);
        text += ',' + format_double("%g", opts.common.gamma.rho);
        text += ',' + std::to_string(job.seed);
        row.text = std::move(text);
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

int run_benchmark(const BenchmarkOptions& opts)
{
    // Collect ground-truth images
    std::vector<std::pair<std::string, ScalarField>> images;
    if (opts.synthetic) {
        images.emplace_back("synthetic",
                            generate_synthetic(opts.synthetic_size, opts.synthetic_size));
    } else {
        std::vector<std::string> paths;
        for (const auto& entry : std::filesystem::directory_iterator(opts.images_dir)) {
            if (!entry.is_regular_file())
                continue;
            std::string ext = entry.path().extension().string();
            std::transform(ext.begin(), ext.end(), ext.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (ext == ".png" || ext == ".pgm" || ext == ".raw")
                paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
        if (paths.empty()) {
            std::cerr << "benchmark: no images found in " << opts.images_dir << "\n";
            return kExitIo;
        }
        for (const std::string& path : paths)
            images.emplace_back(std::filesystem::path(path).stem().string(),
                                read_image(path));
    }

    std::filesystem::create_directories(opts.outdir);

    // Synthesize noise once per (image, level); jobs share the noisy field.
    struct Instance {
        std::string image_id;
        double level;
        std::uint64_t seed;
        const ScalarField* gt;
        ScalarField noisy;
        double delta;
    };
    std::vector<Instance> instances;
    for (const auto& [image_id, gt] : images) {
        const std::uint64_t image_seed = fnv1a64(image_id) ^ opts.seed;
        for (double level : opts.noise_levels) {
            NoiseSpec spec;
            spec.level = level;
            spec.seed = image_seed;
            spec.peak = opts.peak;
            const NoisyImage noisy = add_gaussian_noise(gt, spec);
            instances.push_back(
                {image_id, level, image_seed, &gt, std::move(noisy.f), noisy.delta});
        }
    }

    std::vector<BenchmarkJob> jobs;
    for (const Instance& inst : instances) {
        std::vector<BenchmarkJob> per_image;
        for (const std::string& tag : opts.methods) {
            BenchmarkJob job;
            job.image_id = inst.image_id;
            job.noise_level = inst.level;
            job.seed = inst.seed;
            job.gt = inst.gt;
            job.noisy = &inst.noisy;
            job.delta = inst.delta;
            if (tag == "tv") {
                job.method = "tv";
                job.gamma_source = "none";
            } else if (tag == "tvpwl-over-tv") {
                job.method = "tvpwl";
                job.gamma_source = "over-tv";
            } else if (tag == "tvpwl-gt") {
                job.method = "tvpwl";
                job.gamma_source = "gt";
            } else if (tag == "tgv") {
                job.method = "tgv";
                job.gamma_source = "none";
            } else {
                std::cerr << "benchmark: unknown method '" << tag << "'\n";
                return kExitUsage;
            }
            per_image.push_back(std::move(job));
        }
        std::sort(per_image.begin(), per_image.end(),
                  [](const BenchmarkJob& a, const BenchmarkJob& b) {
                      return method_rank(a.method, a.gamma_source) <
                             method_rank(b.method, b.gamma_source);
                  });
        for (auto& job : per_image)
            jobs.push_back(std::move(job));
    }

    // Worker pool: one solve per worker, results land in preassigned slots so
    // the CSV order never depends on scheduling.
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0)
        workers = 1;
    if (const char* env = std::getenv("TVPWL_WORKERS")) {
        const long requested = std::strtol(env, nullptr, 10);
        if (requested >= 1)
            workers = static_cast<unsigned>(requested);
    }
    workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));

    std::vector<BenchmarkRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    const auto worker_loop = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= jobs.size())
                return;
            rows[idx] = run_benchmark_job(jobs[idx], opts);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t)
        pool.emplace_back(worker_loop);
    worker_loop();
    for (std::thread& t : pool)
        t.join();

    bool any_failed = false, all_converged = true;
    std::string csv =
        "image,noise_level,method,gamma_source,ssim,psnr_db,iterations,converged,"
        "wall_time_s,sigma,tau,theta,tol,beta,lambda,rho,seed\n";
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].failed) {
            any_failed = true;
            std::cerr << "benchmark: job " << jobs[k].image_id << "/" << method_tag(jobs[k])
                      << " failed: " << rows[k].error << "\n";
            continue;
        }
        all_converged = all_converged && rows[k].converged;
        csv += rows[k].text;
        csv += '\n';
    }
    write_text_atomic(opts.outdir + "/benchmark.csv", csv);
    std::cout << opts.outdir + "/benchmark.csv" << "\n";

    if (any_failed)
        return kExitIo;
    return all_converged ? kExitOk : kExitNoConverge;
}

// ------------------------------------------------------------------ check --

int run_check()
{
    const std::vector<checks::CheckResult> results = checks::run_all();
    bool all_pass = true;
    for (const checks::CheckResult& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.detail.empty())
            std::cout << "  (" << r.detail << ")";
        std::cout << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "all checks passed" : "CHECK FAILURES") << "\n";
    return all_pass ? kExitOk : 1;
}

} // namespace

int run(int argc, const char* const* argv)
{
    CLI::App app{"Variational grey-scale image denoising: TV, piecewise-Lipschitz TV "
                 "and TGV^2 with a shared primal-dual engine"};
    app.require_subcommand(1);

    DenoiseOptions denoise_opts;
    CLI::App* denoise = app.add_subcommand("denoise", "Denoise a single image");
    denoise->add_option("--input", denoise_opts.input, "Noisy input image")->required();
    denoise->add_option("--output", denoise_opts.output, "Denoised output image")->required();
    denoise->add_option("--report", denoise_opts.report_path,
                        "JSON report path (default: <output>.report.json)");
    denoise->add_option("--regulariser", denoise_opts.regulariser, "tv | tvpwl | tgv")
        ->check(CLI::IsMember({"tv", "tvpwl", "tgv"}));
    denoise->add_option("--gamma-source", denoise_opts.gamma_source, "file | over-tv | gt")
        ->check(CLI::IsMember({"file", "over-tv", "gt"}));
    denoise->add_option("--gamma", denoise_opts.gamma_path, "Gamma map (for --gamma-source file)");
    denoise->add_option("--ground-truth", denoise_opts.ground_truth_path,
                        "Ground-truth image (metrics, gt gamma, delta)");
    denoise->add_option("--delta", denoise_opts.delta, "Fidelity radius |u-f|_2 <= delta");
    denoise->add_option("--noise-sigma", denoise_opts.noise_sigma,
                        "Per-pixel noise std; sets delta = sigma*sqrt(M*N)");
    denoise->add_flag("--no-history", denoise_opts.no_history,
                      "Do not record per-iteration history");
    add_solver_flags(denoise, denoise_opts.common);

    EstimateGammaOptions gamma_opts;
    CLI::App* estimate = app.add_subcommand("estimate-gamma", "Estimate the Lipschitz budget");
    estimate->add_option("--input", gamma_opts.input, "Noisy image (or ground truth with --source gt)")
        ->required();
    estimate->add_option("--output", gamma_opts.output, "Gamma map output (use .raw for exact values)")
        ->required();
    estimate->add_option("--source", gamma_opts.source, "over-tv | gt")
        ->check(CLI::IsMember({"over-tv", "gt"}));
    add_solver_flags(estimate, gamma_opts.common);

    AddNoiseOptions noise_opts;
    CLI::App* add_noise = app.add_subcommand("add-noise", "Add seeded Gaussian noise");
    add_noise->add_option("--input", noise_opts.input, "Ground-truth image");
    add_noise->add_flag("--synthetic", noise_opts.synthetic,
                        "Use the built-in synthetic image as ground truth");
    add_noise->add_option("--size", noise_opts.synthetic_size, "Synthetic image size");
    add_noise->add_option("--ground-truth-out", noise_opts.gt_out,
                          "Also write the clean ground truth here");
    add_noise->add_option("--output", noise_opts.output,
                          "Noisy output (use .raw: values are not clipped)")
        ->required();
    add_noise->add_option("--report", noise_opts.report_path,
                          "JSON metadata path (default: <output>.json)");
    add_noise->add_option("--noise-level", noise_opts.level, "Noise std as a fraction of peak");
    add_noise->add_option("--noise-sigma", noise_opts.sigma_override,
                          "Noise std in intensity units (overrides --noise-level)");
    add_noise->add_option("--peak", noise_opts.peak, "Intensity range top");
    add_noise->add_option("--seed", noise_opts.seed, "RNG seed");

    BenchmarkOptions bench_opts;
    CLI::App* bench = app.add_subcommand("benchmark", "Run the denoising benchmark grid");
    bench->add_flag("--synthetic", bench_opts.synthetic, "Use the built-in synthetic image");
    bench->add_option("--size", bench_opts.synthetic_size, "Synthetic image size");
    bench->add_option("--images", bench_opts.images_dir, "Directory of ground-truth images");
    bench->add_option("--outdir", bench_opts.outdir, "Output directory")->required();
    bench->add_option("--noise-level", bench_opts.noise_levels, "Noise level(s)");
    bench->add_option("--seed", bench_opts.seed, "Global seed (per-image seeds derive from it)");
    bench->add_option("--peak", bench_opts.peak, "Intensity range top");
    bench->add_option("--methods", bench_opts.methods,
                      "Subset of: tv tvpwl-over-tv tvpwl-gt tgv");
    bench->add_flag("--no-history", bench_opts.no_history, "Skip residual history files");
    add_solver_flags(bench, bench_opts.common);

    CLI::App* check = app.add_subcommand("check", "Run the oracle/invariant self-test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (denoise->parsed())
            return run_denoise(denoise_opts);
        if (estimate->parsed())
            return run_estimate_gamma(gamma_opts);
        if (add_noise->parsed())
            return run_add_noise(noise_opts);
        if (bench->parsed()) {
            const bool have_dir = !bench_opts.images_dir.empty();
            if (bench_opts.synthetic == have_dir) { // exactly one source must be given
                std::cerr << "benchmark: pass either --synthetic or --images DIR\n";
                return kExitUsage;
            }
            return run_benchmark(bench_opts);
        }
        if (check->parsed())
            return run_check();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

} // namespace tvpwl::cli
