#include "tanbundle/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "tanbundle/errors.hpp"
#include "tanbundle/expr.hpp"
#include "tanbundle/rng.hpp"

namespace tanbundle {

namespace {

// ---------------------------------------------------------------------------
// Configuration plumbing
// ---------------------------------------------------------------------------

void validate_common(const RunConfig& cfg) {
    if (cfg.points < 1) throw UsageError("--points must be at least 1");
    if (!(cfg.tol > 0.0) || !(cfg.tol_domega > 0.0) || !(cfg.tol_alg > 0.0)) {
        throw UsageError("tolerances must be positive");
    }
    if (cfg.fd_step < 0.0) throw UsageError("--fd-step must be nonnegative (0 = default steps)");
    if (cfg.threads < 1) throw UsageError("--threads must be at least 1");
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v + 0.0); // +0.0 turns -0 into 0
    return buf;
}

std::string full(double v) { return fmt("%.17g", v); }
std::string brief(double v) { return fmt("%.3e", v); }

// ---------------------------------------------------------------------------
// The fixed subject list of a check run
// ---------------------------------------------------------------------------

enum SubjectIndex : int {
    kConnHH = 0, kConnHV, kConnVH, kConnVV,
    kCurvHHH, kCurvHHV, kCurvHVH, kCurvHVV, kCurvVVH, kCurvVVV,
    kSectional, kScalar,
    kLeeHalf, kLeeFull,
    kNijHH, kNijVV,
    kAlgJsq, kAlgHermitian, kAlgFrame, kAlgArea,
    kNumSubjects
};

enum TolClass { kTolStacked, kTolSingle, kTolAlgebraic };

struct SubjectInfo {
    const char* name;
    TolClass tol_class;
    bool asserted;
};

constexpr SubjectInfo kSubjects[kNumSubjects] = {
    {"connection/HH", kTolSingle, true},
    {"connection/HV", kTolSingle, true},
    {"connection/VH", kTolSingle, true},
    {"connection/VV", kTolSingle, true},
    {"curvature/HHH", kTolStacked, true},
    {"curvature/HHV", kTolStacked, true},
    {"curvature/HVH", kTolStacked, true},
    {"curvature/HVV", kTolStacked, true},
    {"curvature/VVH", kTolStacked, true},
    {"curvature/VVV", kTolStacked, true},
    {"sectional_table", kTolStacked, true},
    {"scalar", kTolStacked, true},
    {"lee/half_log_derivative", kTolSingle, false},
    {"lee/full_log_derivative", kTolSingle, false},
    {"nijenhuis/HH", kTolSingle, true},
    {"nijenhuis/VV", kTolSingle, true},
    {"algebraic/J_squared", kTolAlgebraic, true},
    {"algebraic/hermitian", kTolAlgebraic, true},
    {"algebraic/frame", kTolAlgebraic, true},
    {"algebraic/area", kTolAlgebraic, true},
};

double subject_tol(const RunConfig& cfg, SubjectIndex k) {
    switch (kSubjects[k].tol_class) {
        case kTolStacked: return cfg.tol;
        case kTolSingle: return cfg.tol_domega;
        case kTolAlgebraic: return cfg.tol_alg;
    }
    throw ModelError("unreachable tolerance class");
}

Eigen::VectorXd tensor_vec(const TensorValue& tv) {
    return Eigen::Map<const Eigen::VectorXd>(tv.data().data(),
                                             static_cast<Eigen::Index>(tv.data().size()));
}

Eigen::VectorXd scalar_vec(double v) {
    Eigen::VectorXd out(1);
    out[0] = v;
    return out;
}

struct SampleData {
    std::vector<Eigen::VectorXd> closed, oracle;
};

/* Everything measured at one random sample, written into an indexed slot so
 * the result is independent of which worker evaluates it. */
void eval_sample(const RunConfig& cfg, const ChartedManifold& man, const WeightFunction& w,
                 const FDConfig& fd, int sample_index, SampleData& out) {
    const int m = man.dim();
    const int n = 2 * m;
    SampleRng rng(sample_seed(cfg.seed, static_cast<std::uint64_t>(sample_index)));

    // Fixed draw order: base point, fiber direction, fiber norm, then X, Y, Z.
    const double xmax = man.chart_radius() / (2.0 * std::sqrt(static_cast<double>(m)));
    const Eigen::VectorXd x = rng.uniform_vector(m, -xmax, xmax);
    Eigen::VectorXd d = rng.uniform_vector(m, -1.0, 1.0);
    const double s_norm = rng.uniform(0.1, 2.0);
    const Eigen::VectorXd X = rng.uniform_vector(m, -1.0, 1.0);
    const Eigen::VectorXd Y = rng.uniform_vector(m, -1.0, 1.0);
    const Eigen::VectorXd Z = rng.uniform_vector(m, -1.0, 1.0);

    const Eigen::MatrixXd g0 = metric_at(man, x);
    double dn = std::sqrt(d.dot(g0 * d));
    if (!(dn > 1e-9)) {
        d = Eigen::VectorXd::Unit(m, 0);
        dn = std::sqrt(d.dot(g0 * d));
    }
    const Eigen::VectorXd y = (s_norm / dn) * d;

    const Eigen::VectorXd z = pack_z(x, y);
    const BundlePoint p = make_point(man, x, y, fd);

    out.closed.assign(kNumSubjects, Eigen::VectorXd());
    out.oracle.assign(kNumSubjects, Eigen::VectorXd());

    // Connection, all four lift pairs.
    const std::pair<LiftKind, LiftKind> lift_pairs[4] = {
        {LiftKind::horizontal, LiftKind::horizontal},
        {LiftKind::horizontal, LiftKind::vertical},
        {LiftKind::vertical, LiftKind::horizontal},
        {LiftKind::vertical, LiftKind::vertical},
    };
    const LiftPair conn_cases[4] = {LiftPair::HH, LiftPair::HV, LiftPair::VH, LiftPair::VV};
    for (int i = 0; i < 4; ++i) {
        out.closed[kConnHH + i] = coordinates(nabla_tilde(p, w, conn_cases[i], X, Y, fd));
        out.oracle[kConnHH + i] =
            numeric_nabla_lift(man, w, z, lift_pairs[i].first, lift_pairs[i].second, X, Y, fd);
    }

    // Curvature, all six split cases against one numeric curvature tensor.
    const TensorValue R2 = numeric_riemann_2m(man, w, z, fd);
    const CurvatureCase curv_cases[6] = {CurvatureCase::HHH, CurvatureCase::HHV,
                                         CurvatureCase::HVH, CurvatureCase::HVV,
                                         CurvatureCase::VVH, CurvatureCase::VVV};
    const int curv_kinds[6][3] = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {1, 1, 0}, {1, 1, 1}};
    for (int i = 0; i < 6; ++i) {
        out.closed[kCurvHHH + i] =
            coordinates(curvature_tilde(p, w, curv_cases[i], X, Y, Z, fd));
        auto lift_of = [&](int which, const Eigen::VectorXd& base_vec) {
            return coordinates(lift(p, base_vec,
                                    which ? LiftKind::vertical : LiftKind::horizontal));
        };
        out.oracle[kCurvHHH + i] = contract_riemann(R2, lift_of(curv_kinds[i][0], X),
                                                    lift_of(curv_kinds[i][1], Y),
                                                    lift_of(curv_kinds[i][2], Z));
    }

    // Sectional table: every adapted-frame plane vs the same numeric tensor.
    const Eigen::MatrixXd G = induced_coordinate_metric(p, w);
    const std::vector<TMVector> E = adapted_frame(p, w);
    const SectionalTable table = sectional_table(p, w, fd);
    const int n_entries = static_cast<int>(table.entries.size());
    Eigen::VectorXd sec_closed(n_entries), sec_oracle(n_entries);
    for (int i = 0; i < n_entries; ++i) {
        const SectionalEntry& ent = table.entries[static_cast<std::size_t>(i)];
        sec_closed[i] = ent.value;
        const Eigen::VectorXd Ea = coordinates(E[static_cast<std::size_t>(ent.A)]);
        const Eigen::VectorXd Eb = coordinates(E[static_cast<std::size_t>(ent.B)]);
        const Eigen::VectorXd RW = contract_riemann(R2, Ea, Eb, Eb);
        sec_oracle[i] = RW.dot(G * Ea) /
                        area_sq(p, w, E[static_cast<std::size_t>(ent.A)],
                                E[static_cast<std::size_t>(ent.B)]);
    }
    out.closed[kSectional] = sec_closed;
    out.oracle[kSectional] = sec_oracle;

    // Scalar curvature: closed form vs the double trace of the same tensor.
    const Eigen::MatrixXd Ginv = G.inverse();
    double scal_num = 0.0;
    for (int B = 0; B < n; ++B) {
        for (int K = 0; K < n; ++K) {
            double ric = 0.0;
            for (int A = 0; A < n; ++A) ric += R2.at4(A, B, K, A);
            scal_num += Ginv(B, K) * ric;
        }
    }
    out.closed[kScalar] = scalar_vec(scalar_tilde(p, w, fd));
    out.oracle[kScalar] = scalar_vec(scal_num);

    // Lee-form candidates: both wedge products against one numeric dOmega.
    const Eigen::VectorXd dOm = tensor_vec(numeric_d_omega(man, w, z, fd));
    out.closed[kLeeHalf] =
        tensor_vec(wedge_omega(man, w, z, LeeCoefficient::half_log_derivative, fd));
    out.closed[kLeeFull] =
        tensor_vec(wedge_omega(man, w, z, LeeCoefficient::full_log_derivative, fd));
    out.oracle[kLeeHalf] = dOm;
    out.oracle[kLeeFull] = dOm;

    // Nijenhuis tensor, the two closed-form cases.
    out.closed[kNijHH] = coordinates(nijenhuis_closed(p, w, NijenhuisCase::HH, X, Y, fd));
    out.oracle[kNijHH] =
        numeric_nijenhuis(man, w, z, LiftKind::horizontal, LiftKind::horizontal, X, Y, fd);
    out.closed[kNijVV] = coordinates(nijenhuis_closed(p, w, NijenhuisCase::VV, X, Y, fd));
    out.oracle[kNijVV] =
        numeric_nijenhuis(man, w, z, LiftKind::vertical, LiftKind::vertical, X, Y, fd);

    // Algebraic identities of the structure itself.
    const TMVector U = tm_vector(p, X, Y);
    const TMVector V = tm_vector(p, Z, X);
    const TMVector JJU = apply_J(p, w, apply_J(p, w, U));
    out.closed[kAlgJsq] = coordinates(JJU);
    out.oracle[kAlgJsq] = -coordinates(U);

    out.closed[kAlgHermitian] = scalar_vec(g_a_eval(p, w, apply_J(p, w, U), apply_J(p, w, V)));
    out.oracle[kAlgHermitian] = scalar_vec(g_a_eval(p, w, U, V));

    Eigen::VectorXd gram(n * n), gram_expect(n * n);
    for (int A = 0; A < n; ++A) {
        for (int B = 0; B < n; ++B) {
            gram[A * n + B] = g_a_eval(p, w, E[static_cast<std::size_t>(A)],
                                       E[static_cast<std::size_t>(B)]);
            gram_expect[A * n + B] = (A == B) ? 1.0 : 0.0;
        }
    }
    out.closed[kAlgFrame] = gram;
    out.oracle[kAlgFrame] = gram_expect;

    const std::vector<Eigen::VectorXd> e = orthonormal_base_frame(p);
    const double a_val = w.a(p.t);
    std::vector<double> areas, areas_expect;
    auto push_area = [&](const TMVector& Ua, const TMVector& Va, double expect) {
        areas.push_back(area_sq(p, w, Ua, Va));
        areas_expect.push_back(expect);
    };
    push_area(lift(p, e[0], LiftKind::horizontal), lift(p, e[1], LiftKind::horizontal), 1.0);
    push_area(lift(p, e[1], LiftKind::horizontal), lift(p, e[1], LiftKind::vertical), a_val);
    push_area(lift(p, e[0], LiftKind::horizontal), lift(p, e[0], LiftKind::vertical),
              a_val * (1.0 + 2.0 * p.t));
    if (m >= 3) {
        push_area(lift(p, e[1], LiftKind::vertical), lift(p, e[2], LiftKind::vertical),
                  a_val * a_val);
    }
    out.closed[kAlgArea] =
        Eigen::Map<const Eigen::VectorXd>(areas.data(), static_cast<Eigen::Index>(areas.size()));
    out.oracle[kAlgArea] = Eigen::Map<const Eigen::VectorXd>(
        areas_expect.data(), static_cast<Eigen::Index>(areas_expect.size()));
}

std::string lee_coefficient_text(LeeCoefficient which) {
    return which == LeeCoefficient::half_log_derivative ? "a'/(2a) - 1/(1+r)"
                                                        : "a'/a - 1/(1+r)";
}

} // namespace

ChartedManifold make_base(const RunConfig& cfg) {
    if (cfg.base == "euclidean" || cfg.base == "sphere" || cfg.base == "hyperbolic") {
        if (cfg.dim < 2) throw UsageError("--dim must be at least 2");
        if (cfg.base == "euclidean") return ChartedManifold::euclidean(cfg.dim);
        if (cfg.base == "sphere") return ChartedManifold::sphere(cfg.c, cfg.dim);
        return ChartedManifold::hyperbolic(cfg.c, cfg.dim);
    }
    ChartedManifold man = load_manifold_file(cfg.base);
    if (man.dim() < 2) throw UsageError("base dimension must be at least 2");
    return man;
}

WeightFunction make_weight(const RunConfig& cfg) {
    if (cfg.weight == "cheeger_gromoll") return WeightFunction::cheeger_gromoll();
    if (cfg.weight == "almost_kaehler") return WeightFunction::almost_kaehler();
    if (cfg.weight == "flat") return WeightFunction::flat();
    if (cfg.weight == "constant") return WeightFunction::constant(cfg.weight_k);
    if (cfg.weight == "integrable") return WeightFunction::integrable(cfg.weight_c, cfg.weight_k);
    return load_weight_file(cfg.weight);
}

FDConfig make_fd(const RunConfig& cfg) {
    if (cfg.fd_step == 0.0) return FDConfig{};
    return FDConfig{cfg.fd_step, 10.0 * cfg.fd_step};
}

CheckResult run_check(const RunConfig& cfg) {
    validate_common(cfg);
    const ChartedManifold man = make_base(cfg);
    const WeightFunction w = make_weight(cfg);
    const FDConfig fd = make_fd(cfg);
    const int S = cfg.points;

    std::vector<SampleData> out(static_cast<std::size_t>(S));
    if (cfg.threads <= 1) {
        for (int s = 0; s < S; ++s) eval_sample(cfg, man, w, fd, s, out[static_cast<std::size_t>(s)]);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr first_error;
        std::mutex error_mutex;
        auto loop = [&]() {
            for (;;) {
                const int s = next.fetch_add(1);
                if (s >= S) return;
                try {
                    eval_sample(cfg, man, w, fd, s, out[static_cast<std::size_t>(s)]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        const int n_workers = std::min(cfg.threads, S);
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(loop);
        for (std::thread& th : pool) th.join();
        if (first_error) std::rethrow_exception(first_error);
    }

    // Calibrate the single global Nijenhuis proportionality constant by joint
    // least squares over both cases and every sample.
    double lam_num = 0.0, lam_den = 0.0;
    for (const SampleData& sd : out) {
        for (int k : {static_cast<int>(kNijHH), static_cast<int>(kNijVV)}) {
            lam_num += sd.closed[static_cast<std::size_t>(k)].dot(sd.oracle[static_cast<std::size_t>(k)]);
            lam_den += sd.closed[static_cast<std::size_t>(k)].squaredNorm();
        }
    }
    const double lambda = lam_den > 1e-18 ? lam_num / lam_den : 1.0;

    CheckResult res;
    res.cfg = cfg;
    res.base_name = man.name();
    res.weight_name = w.name();
    res.nijenhuis_constant = lambda;
    res.curvature_sign =
        "R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z";

    for (int k = 0; k < kNumSubjects; ++k) {
        std::vector<Eigen::VectorXd> closed_vals, oracle_vals;
        closed_vals.reserve(static_cast<std::size_t>(S));
        oracle_vals.reserve(static_cast<std::size_t>(S));
        const bool scale_by_lambda = (k == kNijHH || k == kNijVV);
        for (const SampleData& sd : out) {
            if (scale_by_lambda) {
                closed_vals.push_back(lambda * sd.closed[static_cast<std::size_t>(k)]);
            } else {
                closed_vals.push_back(sd.closed[static_cast<std::size_t>(k)]);
            }
            oracle_vals.push_back(sd.oracle[static_cast<std::size_t>(k)]);
        }
        CheckEntry entry;
        entry.report = compare(kSubjects[k].name, closed_vals, oracle_vals,
                               subject_tol(cfg, static_cast<SubjectIndex>(k)));
        entry.asserted = kSubjects[k].asserted;
        if (scale_by_lambda) {
            entry.report.notes = "closed form scaled by calibrated constant " + fmt("%.6g", lambda);
        }
        if (k == kLeeHalf || k == kLeeFull) {
            entry.report.notes = "candidate probe; verdict carried by lck_identity";
        }
        res.comparisons.push_back(std::move(entry));

        if (k == kLeeFull) {
            // Synthesize the asserted lcK-identity subject from the two probes.
            const ComparisonReport& half = res.comparisons[kLeeHalf].report;
            const ComparisonReport& full_rep = res.comparisons[kLeeFull].report;
            CheckEntry lck;
            lck.asserted = true;
            ComparisonReport& rep = lck.report;
            rep.subject = "lck_identity";
            rep.samples = half.samples;
            rep.tolerance = half.tolerance;
            rep.pass = half.pass || full_rep.pass;
            const ComparisonReport& win = half.pass || !full_rep.pass ? half : full_rep;
            rep.max_abs_err = win.max_abs_err;
            rep.max_rel_err = win.max_rel_err;
            rep.scale = win.scale;
            if (half.pass && full_rep.pass) {
                res.omega_coefficient = lee_coefficient_text(LeeCoefficient::half_log_derivative);
                rep.notes = "dOmega = omega ^ Omega; candidates coincide for this weight";
            } else if (half.pass) {
                res.omega_coefficient = lee_coefficient_text(LeeCoefficient::half_log_derivative);
                rep.notes = "dOmega = omega ^ Omega with omega(X^V) = (a'/(2a) - 1/(1+r)) g(X,u)";
            } else if (full_rep.pass) {
                res.omega_coefficient = lee_coefficient_text(LeeCoefficient::full_log_derivative);
                rep.notes = "dOmega = omega ^ Omega with omega(X^V) = (a'/a - 1/(1+r)) g(X,u)";
            } else {
                res.omega_coefficient = "unresolved";
                rep.notes = "neither candidate matches the numeric exterior derivative";
            }
            res.comparisons.push_back(std::move(lck));
        }
    }

    res.pass = true;
    for (const CheckEntry& entry : res.comparisons) {
        if (entry.asserted && !entry.report.pass) res.pass = false;
    }
    return res;
}

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

std::string render_check_text(const CheckResult& res) {
    std::ostringstream os;
    os << "tanbundle check\n";
    os << "  base:    " << res.base_name << "\n";
    os << "  weight:  " << res.weight_name << "\n";
    os << "  points:  " << res.cfg.points << "   seed: " << res.cfg.seed << "\n";
    os << "conventions:\n";
    os << "  curvature sign:     " << res.curvature_sign << "\n";
    os << "  omega coefficient:  " << res.omega_coefficient << "\n";
    os << "  nijenhuis constant: " << fmt("%.9g", res.nijenhuis_constant) << "\n";
    os << "comparisons:\n";
    for (const CheckEntry& entry : res.comparisons) {
        const ComparisonReport& r = entry.report;
        const char* tag = entry.asserted ? (r.pass ? "[PASS] " : "[FAIL] ")
                                         : (r.pass ? "[probe pass] " : "[probe fail] ");
        os << "  " << tag;
        os.width(entry.asserted ? 26 : 19);
        os << std::left << r.subject << std::right;
        os << "  max_abs=" << brief(r.max_abs_err) << "  max_rel=" << brief(r.max_rel_err)
           << "  tol=" << fmt("%g", r.tolerance);
        if (!r.notes.empty()) os << "  (" << r.notes << ")";
        os << "\n";
    }
    os << "verdict: " << (res.pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::string render_check_json(const CheckResult& res) {
    nlohmann::ordered_json j;
    j["command"] = "check";
    nlohmann::ordered_json cfg;
    cfg["base"] = res.cfg.base;
    cfg["c"] = res.cfg.c;
    cfg["dim"] = res.cfg.dim;
    cfg["weight"] = res.cfg.weight;
    cfg["weight_c"] = res.cfg.weight_c;
    cfg["weight_k"] = res.cfg.weight_k;
    cfg["points"] = res.cfg.points;
    cfg["seed"] = res.cfg.seed;
    cfg["tol"] = res.cfg.tol;
    cfg["tol_domega"] = res.cfg.tol_domega;
    cfg["tol_alg"] = res.cfg.tol_alg;
    cfg["fd_step"] = res.cfg.fd_step;
    j["config"] = cfg;
    j["base"] = res.base_name;
    j["weight"] = res.weight_name;
    nlohmann::ordered_json conv;
    conv["curvature_sign"] = res.curvature_sign;
    conv["omega_coefficient"] = res.omega_coefficient;
    conv["nijenhuis_constant"] = res.nijenhuis_constant;
    j["conventions"] = conv;
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const CheckEntry& entry : res.comparisons) {
        const ComparisonReport& r = entry.report;
        nlohmann::ordered_json c;
        c["subject"] = r.subject;
        c["samples"] = r.samples;
        c["max_abs_err"] = r.max_abs_err;
        c["max_rel_err"] = r.max_rel_err;
        c["scale"] = r.scale;
        c["tolerance"] = r.tolerance;
        c["verdict"] = r.pass ? "pass" : "fail";
        c["asserted"] = entry.asserted;
        c["notes"] = r.notes;
        comps.push_back(std::move(c));
    }
    j["comparisons"] = std::move(comps);
    j["verdict"] = res.pass ? "pass" : "fail";
    return j.dump(2) + "\n";
}

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string render_check_csv(const CheckResult& res) {
    std::ostringstream os;
    os << "subject,samples,max_abs_err,max_rel_err,scale,tolerance,verdict,asserted,notes\n";
    for (const CheckEntry& entry : res.comparisons) {
        const ComparisonReport& r = entry.report;
        os << r.subject << "," << r.samples << "," << full(r.max_abs_err) << ","
           << full(r.max_rel_err) << "," << full(r.scale) << "," << full(r.tolerance) << ","
           << (r.pass ? "pass" : "fail") << "," << (entry.asserted ? "true" : "false") << ","
           << csv_quote(r.notes) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Sectional table at one point
// ---------------------------------------------------------------------------

namespace {

std::string pair_class_name(PairClass cls) {
    switch (cls) {
        case PairClass::HH: return "HH";
        case PairClass::H_V1: return "H_V1";
        case PairClass::H_Vk: return "H_Vk";
        case PairClass::V1_Vk: return "V1_Vk";
        case PairClass::Vk_Vl: return "Vk_Vl";
    }
    throw ModelError("unreachable pair class");
}

} // namespace

std::vector<SectionalRow> run_sectional(const RunConfig& cfg) {
    validate_common(cfg);
    const ChartedManifold man = make_base(cfg);
    const WeightFunction w = make_weight(cfg);
    const FDConfig fd = make_fd(cfg);
    const int m = man.dim();

    Eigen::VectorXd x = Eigen::VectorXd::Zero(m);
    if (!cfg.x.empty()) {
        if (static_cast<int>(cfg.x.size()) != m) {
            throw UsageError("--x needs exactly " + std::to_string(m) + " components");
        }
        x = Eigen::Map<const Eigen::VectorXd>(cfg.x.data(), m);
    }
    Eigen::VectorXd y = Eigen::VectorXd::Unit(m, 0);
    if (!cfg.y.empty()) {
        if (static_cast<int>(cfg.y.size()) != m) {
            throw UsageError("--y needs exactly " + std::to_string(m) + " components");
        }
        y = Eigen::Map<const Eigen::VectorXd>(cfg.y.data(), m);
    }

    const Eigen::VectorXd z = pack_z(x, y);
    const BundlePoint p = make_point(man, x, y, fd);
    const SectionalTable table = sectional_table(p, w, fd);
    const TensorValue R2 = numeric_riemann_2m(man, w, z, fd);
    const Eigen::MatrixXd G = induced_coordinate_metric(p, w);
    const std::vector<TMVector> E = adapted_frame(p, w);

    std::vector<SectionalRow> rows;
    rows.reserve(table.entries.size());
    for (const SectionalEntry& ent : table.entries) {
        SectionalRow row;
        row.pair_class = pair_class_name(ent.cls);
        row.A = ent.A + 1;
        row.B = ent.B + 1;
        row.closed_form = ent.value;
        const Eigen::VectorXd Ea = coordinates(E[static_cast<std::size_t>(ent.A)]);
        const Eigen::VectorXd Eb = coordinates(E[static_cast<std::size_t>(ent.B)]);
        const Eigen::VectorXd RW = contract_riemann(R2, Ea, Eb, Eb);
        row.oracle = RW.dot(G * Ea) / area_sq(p, w, E[static_cast<std::size_t>(ent.A)],
                                              E[static_cast<std::size_t>(ent.B)]);
        row.abs_err = std::abs(row.closed_form - row.oracle);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_sectional_text(const RunConfig& cfg, const std::vector<SectionalRow>& rows) {
    std::ostringstream os;
    os << "sectional curvatures of the adapted frame (A, B are 1-based frame indices)\n";
    os << "base=" << cfg.base << " weight=" << cfg.weight << "\n";
    os << "pair_class   A   B   closed_form             oracle                  abs_err\n";
    for (const SectionalRow& r : rows) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-10s %3d %3d   %-22.15g  %-22.15g  %.3e\n",
                      r.pair_class.c_str(), r.A, r.B, r.closed_form, r.oracle, r.abs_err);
        os << line;
    }
    return os.str();
}

std::string render_sectional_csv(const std::vector<SectionalRow>& rows) {
    std::ostringstream os;
    os << "pair_class,A,B,closed_form,oracle,abs_err\n";
    for (const SectionalRow& r : rows) {
        os << r.pair_class << "," << r.A << "," << r.B << "," << full(r.closed_form) << ","
           << full(r.oracle) << "," << full(r.abs_err) << "\n";
    }
    return os.str();
}

std::string render_sectional_json(const std::vector<SectionalRow>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SectionalRow& r : rows) {
        nlohmann::ordered_json row;
        row["pair_class"] = r.pair_class;
        row["A"] = r.A;
        row["B"] = r.B;
        row["closed_form"] = r.closed_form;
        row["oracle"] = r.oracle;
        row["abs_err"] = r.abs_err;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Weight sweep along the fiber
// ---------------------------------------------------------------------------

std::string run_sweep_csv(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.steps < 2) throw UsageError("--steps must be at least 2");
    if (!(cfg.t_max > 0.0)) throw UsageError("--t-max must be positive");
    const ChartedManifold man = make_base(cfg);
    if (!man.is_space_form()) {
        throw UsageError("sweep requires a space-form base (euclidean, sphere, hyperbolic)");
    }
    const double c0 = man.space_form_c();
    const int m = man.dim();
    const WeightFunction w = make_weight(cfg);
    const FDConfig fd = make_fd(cfg);

    std::ostringstream os;
    os << "t,r,a,a_prime,L,F1,F2,F3,K_v1vk,K_vkvl,scal_tilde,ode_lhs\n";
    const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(m);
    for (int i = 0; i < cfg.steps; ++i) {
        const double t = cfg.t_max * static_cast<double>(i) / static_cast<double>(cfg.steps - 1);
        const double r = std::sqrt(1.0 + 2.0 * t);
        const WeightFunction::Eval ev = w.eval(t);
        const double L = L_of(w, t);
        const FCoeffs F = f_coeffs(w, t);
        const double K_v1vk = -(F.F2 + 2.0 * t * F.F3) / ev.a;
        const double K_vkvl = -F.F2 / ev.a;
        // The conformal chart is normalized at the origin, so a fiber vector of
        // Euclidean length sqrt(2t) has energy density exactly t there.
        const Eigen::VectorXd y = std::sqrt(2.0 * t) * Eigen::VectorXd::Unit(m, 0);
        const BundlePoint p = make_point(man, x0, y, fd);
        const double st = scalar_tilde(p, w, fd);
        const double ode = scal_ode_lhs(w, c0, m, t);
        os << full(t) << "," << full(r) << "," << full(ev.a) << "," << full(ev.a1) << ","
           << full(L) << "," << full(F.F1) << "," << full(F.F2) << "," << full(F.F3) << ","
           << full(K_v1vk) << "," << full(K_vkvl) << "," << full(st) << "," << full(ode) << "\n";
    }
    return os.str();
}

} // namespace tanbundle
