// Command-line front end: computes fidelities, distances, geodesics,
// barycenters and divergences on JSON matrix inputs, runs the verification
// suite, and emits the rebit contour dataset.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "buresgeom/barycenter.hpp"
#include "buresgeom/divergence.hpp"
#include "buresgeom/fidelity.hpp"
#include "buresgeom/io.hpp"
#include "buresgeom/manifold.hpp"
#include "buresgeom/suite.hpp"
#include "buresgeom/verify.hpp"

namespace bg = buresgeom;

namespace {

int thread_budget() {
    if (const char* env = std::getenv("BURES_GEOM_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

bg::Matrix load_base(const std::string& spec, Eigen::Index d) {
    if (spec == "I") return bg::Matrix::Identity(d, d);
    return bg::load_matrix(spec);
}

void print_complex(bg::Cplx z) {
    std::printf("{\"re\":%s,\"im\":%s}\n", bg::format_double(z.real()).c_str(),
                bg::format_double(z.imag()).c_str());
}

bg::MetricKind parse_metric(const std::string& name) {
    if (name == "bw" || name == "bures-wasserstein") return bg::MetricKind::BuresWasserstein;
    if (name == "ai" || name == "affine-invariant") return bg::MetricKind::AffineInvariant;
    if (name == "euclidean") return bg::MetricKind::Euclidean;
    throw std::invalid_argument("unknown metric: " + name);
}

// Rebits are real-entried 2x2 densities.
void require_rebit(const bg::Matrix& m, const char* what) {
    if (m.rows() != 2 || m.cols() != 2)
        throw bg::DimensionError(std::string(what) + ": rebit inputs must be 2x2");
    if (m.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw bg::DimensionError(std::string(what) + ": rebit inputs must be real-entried");
    if (std::abs(m.trace().real() - 1.0) > 1e-10)
        throw bg::DimensionError(std::string(what) + ": rebit inputs must have unit trace");
}

struct FidelityArgs {
    std::string p_path, q_path, kind = "uhlmann", base, bases, form = "definition";
    double z = 1.0, x = 1.0;
};

int run_fidelity(const FidelityArgs& a) {
    const bg::Matrix p = bg::load_matrix(a.p_path);
    const bg::Matrix q = bg::load_matrix(a.q_path);
    if (a.kind == "uhlmann") {
        print_complex(bg::uhlmann(p, q));
    } else if (a.kind == "holevo") {
        print_complex(bg::holevo(p, q));
    } else if (a.kind == "matsumoto") {
        print_complex(bg::matsumoto(p, q));
    } else if (a.kind == "log-euclidean") {
        print_complex(bg::log_euclidean(p, q));
    } else if (a.kind == "z") {
        print_complex(bg::z_fidelity(p, q, a.z));
    } else if (a.kind == "polar") {
        print_complex(bg::polar_fidelity(p, q, a.x));
    } else if (a.kind == "generalized") {
        if (a.base.empty()) throw std::invalid_argument("--kind generalized requires --base");
        bg::FidelityForm form = bg::FidelityForm::Definition;
        if (a.form == "polar") form = bg::FidelityForm::PolarUnitary;
        else if (a.form == "geometric-mean") form = bg::FidelityForm::GeometricMean;
        else if (a.form != "definition")
            throw std::invalid_argument("unknown --form: " + a.form);
        print_complex(bg::generalized_fidelity(p, q, load_base(a.base, p.rows()), form).value);
    } else if (a.kind == "interior") {
        if (a.bases.empty()) throw std::invalid_argument("--kind interior requires --bases");
        const bg::StateEnsemble e = bg::ensemble_from_json(bg::load_json(a.bases));
        print_complex(bg::interior_fidelity(p, q, {e.states, e.weights}));
    } else {
        throw std::invalid_argument("unknown --kind: " + a.kind);
    }
    return 0;
}

int run_rebit_contour(const std::string& p_path, const std::string& q_path, int resolution,
                      const std::string& out, std::string geo_out) {
    const bg::Matrix p = bg::load_matrix(p_path);
    const bg::Matrix q = bg::load_matrix(q_path);
    require_rebit(p, "rebit-contour");
    require_rebit(q, "rebit-contour");
    if (resolution < 16) throw std::invalid_argument("rebit-contour: resolution must be >= 16");
    if (geo_out.empty()) geo_out = out + ".geodesic.csv";

    constexpr double kDiskMargin = 1e-6;  // keep the base strictly PD
    struct Cell {
        double x, z;
        bg::Cplx f;
        bool inside;
    };
    std::vector<Cell> cells(static_cast<size_t>(resolution) * resolution);

    const int n_threads = std::min(thread_budget(), resolution);
    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int i; (i = next_row.fetch_add(1)) < resolution;) {
            const double x = -1.0 + 2.0 * i / (resolution - 1);
            for (int j = 0; j < resolution; ++j) {
                const double z = -1.0 + 2.0 * j / (resolution - 1);
                Cell& cell = cells[static_cast<size_t>(i) * resolution + j];
                cell.x = x;
                cell.z = z;
                cell.inside = x * x + z * z < 1.0 - kDiskMargin;
                if (cell.inside)
                    cell.f = bg::generalized_fidelity(p, q, bg::rebit_state(x, z)).value;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ofstream os(out);
    if (!os) throw std::ios_base::failure("cannot write " + out);
    os << "x,z,re_F,im_F\n";
    for (const Cell& c : cells)
        if (c.inside)
            os << bg::format_double(c.x) << ',' << bg::format_double(c.z) << ','
               << bg::format_double(c.f.real()) << ',' << bg::format_double(c.f.imag()) << '\n';

    std::ofstream gs(geo_out);
    if (!gs) throw std::ios_base::failure("cannot write " + geo_out);
    gs << "t,re_F,im_F\n";
    for (int k = 0; k <= 10; ++k) {
        const double t = 0.1 * k;
        const bg::Matrix r = bg::geodesic_point(bg::MetricKind::BuresWasserstein, p, q, t);
        const bg::Cplx f = bg::generalized_fidelity(p, q, r).value;
        gs << bg::format_double(t) << ',' << bg::format_double(f.real()) << ','
           << bg::format_double(f.imag()) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized fidelity and Bures-Wasserstein geometry toolkit"};
    app.require_subcommand(1);

    FidelityArgs fa;
    auto* fid = app.add_subcommand("fidelity", "compute a fidelity between two matrices");
    fid->add_option("--p", fa.p_path)->required();
    fid->add_option("--q", fa.q_path)->required();
    fid->add_option("--kind", fa.kind,
                    "uhlmann|holevo|matsumoto|log-euclidean|z|generalized|polar|interior");
    fid->add_option("--base", fa.base, "base matrix file, or I for the identity");
    fid->add_option("--bases", fa.bases, "ensemble JSON of bases for --kind interior");
    fid->add_option("--form", fa.form, "definition|polar|geometric-mean");
    fid->add_option("--z", fa.z);
    fid->add_option("--x", fa.x);

    std::string d_p, d_q, d_metric = "bw", d_base;
    auto* dist = app.add_subcommand("distance", "squared distance between two matrices");
    dist->add_option("--p", d_p)->required();
    dist->add_option("--q", d_q)->required();
    dist->add_option("--metric", d_metric, "bw|ai|euclidean");
    dist->add_option("--base", d_base, "base matrix: report the generalized Bures distance");

    std::string g_p, g_q, g_metric = "bw";
    double g_t = 0.5;
    auto* geo = app.add_subcommand("geodesic", "point along a geodesic");
    geo->add_option("--p", g_p)->required();
    geo->add_option("--q", g_q)->required();
    geo->add_option("--metric", g_metric, "bw|ai|euclidean");
    geo->add_option("--t", g_t);

    std::string b_ensemble, b_norm = "weighted";
    double b_tol = 1e-10;
    int b_max_iter = 10000;
    auto* bary = app.add_subcommand("barycenter", "Bures-Wasserstein barycenter of an ensemble");
    bary->add_option("--ensemble", b_ensemble)->required();
    bary->add_option("--tol", b_tol);
    bary->add_option("--max-iter", b_max_iter);
    bary->add_option("--normalization", b_norm, "weighted|fidelity-maximizer");

    std::string v_p, v_q, v_kind = "petz", v_base;
    double v_alpha = 0.5, v_z = 1.0;
    bool v_natural = false;
    auto* div = app.add_subcommand("divergence", "Renyi and relative-entropy divergences");
    div->add_option("--p", v_p)->required();
    div->add_option("--q", v_q)->required();
    div->add_option("--kind", v_kind,
                    "petz|sandwich|reverse-sandwich|geometric|alpha-z|umegaki|"
                    "belavkin-staszewski|max|generalized");
    div->add_option("--alpha", v_alpha);
    div->add_option("--z", v_z);
    div->add_option("--base", v_base, "base matrix for --kind generalized, or I");
    div->add_flag("--natural", v_natural, "report in nats instead of bits");

    std::vector<Eigen::Index> s_dims{2, 3, 4, 6, 8};
    int s_trials = 200;
    std::uint64_t s_seed = 42;
    double s_tol = 1e-8;
    std::string s_out;
    auto* ver = app.add_subcommand("verify", "run the theorem-verification suite");
    ver->add_option("--dims", s_dims);
    ver->add_option("--trials", s_trials);
    ver->add_option("--seed", s_seed);
    ver->add_option("--tol", s_tol);
    ver->add_option("--out", s_out, "write the full JSON report here");

    std::string r_p, r_q, r_out, r_geo_out;
    int r_resolution = 64;
    auto* reb = app.add_subcommand("rebit-contour", "contour dataset of F_R over the Bloch disk");
    reb->add_option("--p", r_p)->required();
    reb->add_option("--q", r_q)->required();
    reb->add_option("--resolution", r_resolution);
    reb->add_option("--out", r_out)->required();
    reb->add_option("--geodesic-out", r_geo_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fid->parsed()) return run_fidelity(fa);

        if (dist->parsed()) {
            const bg::Matrix p = bg::load_matrix(d_p);
            const bg::Matrix q = bg::load_matrix(d_q);
            double sq;
            if (!d_base.empty())
                sq = bg::generalized_bures_sq(p, q, load_base(d_base, p.rows()));
            else
                sq = bg::squared_distance(parse_metric(d_metric), p, q);
            std::printf("{\"squared\":%s,\"distance\":%s}\n", bg::format_double(sq).c_str(),
                        bg::format_double(std::sqrt(std::max(sq, 0.0))).c_str());
            return 0;
        }

        if (geo->parsed()) {
            const bg::Matrix c = bg::geodesic_point(parse_metric(g_metric), bg::load_matrix(g_p),
                                                    bg::load_matrix(g_q), g_t);
            std::cout << bg::matrix_to_json(c).dump() << '\n';
            return 0;
        }

        if (bary->parsed()) {
            const bg::StateEnsemble e = bg::ensemble_from_json(bg::load_json(b_ensemble));
            const auto norm = b_norm == "fidelity-maximizer"
                                  ? bg::BarycenterNormalization::FidelityMaximizer
                                  : bg::BarycenterNormalization::Weighted;
            const auto result = bg::bw_barycenter(e, b_tol, b_max_iter, norm);
            nlohmann::json j = {{"sigma", bg::matrix_to_json(result.sigma)},
                                {"iterations", result.iterations},
                                {"residual", result.residual},
                                {"total_fidelity", result.total_fidelity},
                                {"converged", result.converged}};
            std::cout << j.dump() << '\n';
            return 0;
        }

        if (div->parsed()) {
            const bg::Matrix p = bg::load_matrix(v_p);
            const bg::Matrix q = bg::load_matrix(v_q);
            const bg::LogBase base = v_natural ? bg::LogBase::Natural : bg::LogBase::Two;
            double value;
            if (v_kind == "petz") value = bg::petz(p, q, v_alpha, base);
            else if (v_kind == "sandwich") value = bg::sandwich(p, q, v_alpha, base);
            else if (v_kind == "reverse-sandwich")
                value = bg::reverse_sandwich(p, q, v_alpha, base);
            else if (v_kind == "geometric") value = bg::geometric_renyi(p, q, v_alpha, base);
            else if (v_kind == "alpha-z") value = bg::alpha_z_divergence(p, q, v_alpha, v_z, base);
            else if (v_kind == "umegaki") value = bg::umegaki(p, q, base);
            else if (v_kind == "belavkin-staszewski")
                value = bg::belavkin_staszewski(p, q, base);
            else if (v_kind == "max") value = bg::max_relative(p, q, base);
            else if (v_kind == "generalized") {
                if (v_base.empty())
                    throw std::invalid_argument("--kind generalized requires --base");
                value = bg::generalized_renyi(p, q, load_base(v_base, p.rows()), v_alpha, base);
            } else {
                throw std::invalid_argument("unknown --kind: " + v_kind);
            }
            std::printf("{\"value\":%s}\n", bg::format_double(value).c_str());
            return 0;
        }

        if (ver->parsed()) {
            bg::SuiteConfig cfg;
            cfg.dims = s_dims;
            cfg.trials = s_trials;
            cfg.seed = s_seed;
            cfg.tol = s_tol;
            const bg::SuiteReport report = bg::run_suite(cfg);
            for (const auto& c : report.checks)
                std::printf("%-28s %s  trials=%d  max_residual=%.3e%s\n", c.name.c_str(),
                            c.pass ? "pass" : "FAIL", c.trials, c.max_residual,
                            c.asserted ? "" : "  (not asserted)");
            if (!s_out.empty()) {
                std::ofstream os(s_out);
                if (!os) throw std::ios_base::failure("cannot write " + s_out);
                os << bg::suite_report_to_json(report).dump(2) << '\n';
            }
            return report.all_pass() ? 0 : 1;
        }

        if (reb->parsed()) return run_rebit_contour(r_p, r_q, r_resolution, r_out, r_geo_out);
    } catch (const bg::DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const bg::PositivityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const bg::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
