#include "sivhs/frobenius.hpp"

#include <map>
#include <memory>

#include "sivhs/errors.hpp"

namespace sivhs {

namespace {

using ByPower = std::map<int, SparseVec>;
using ByMono = std::map<Mono, ByPower, MonoLess>;

ByMono group(const HElem& x) {
    ByMono r;
    for (const auto& [key, v] : slices_of(x)) r[key.mono][key.power] = v;
    return r;
}

// Linear system whose columns are t-constant elements, rows indexed by (nu-power, class).
class ColumnSystem {
public:
    explicit ColumnSystem(const std::vector<HElem>& cols) : cols_(cols.size()) {
        std::vector<ByPower> flat;
        for (const auto& c : cols) {
            ByPower b;
            for (const auto& [key, v] : slices_of(c)) b[key.power] = v;
            for (const auto& [p, v] : b)
                for (const auto& [j, x] : v) rows_.emplace(std::make_pair(p, j), 0);
            flat.push_back(std::move(b));
        }
        std::size_t k = 0;
        for (auto& [key, idx] : rows_) idx = k++;
        Matrix m(rows_.size(), cols_);
        for (std::size_t c = 0; c < cols_; ++c)
            for (const auto& [p, v] : flat[c])
                for (const auto& [j, x] : v) m(rows_.at({p, j}), c) = x;
        solver_ = std::make_shared<LinearSolver>(m);
    }

    std::size_t rank() const { return solver_->rank(); }

    std::optional<std::vector<Scalar>> solve(const ByPower& rhs) const {
        std::vector<Scalar> b(rows_.size());
        for (const auto& [p, v] : rhs)
            for (const auto& [j, x] : v) {
                auto it = rows_.find({p, j});
                if (it == rows_.end()) return std::nullopt;
                b[it->second] = x;
            }
        return solver_->solve(b);
    }

private:
    std::size_t cols_;
    std::map<std::pair<int, int>, std::size_t> rows_;
    std::shared_ptr<LinearSolver> solver_;
};

// Series x_c with sum_c x_c cols_c = target through degree upto.
std::vector<SuperSeries> solve_series(const std::vector<HElem>& cols, const HElem& target, int upto,
                                      const std::string& what) {
    const RingPtr& ring = target.ring;
    std::vector<HElem> lead;
    for (const auto& c : cols) lead.push_back(c.homogeneous(0));
    ColumnSystem sys(lead);
    if (sys.rank() != cols.size())
        throw StructuralError("frobenius", "derivatives of the period map are dependent at t = 0");
    std::vector<SuperSeries> x(cols.size(), SuperSeries(ring));
    for (int k = 0; k <= upto; ++k) {
        HElem rest = target.homogeneous(k);
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!x[c].is_zero()) rest -= cols[c].left_mul(lift(x[c])).homogeneous(k);
        for (const auto& [mono, rhs] : group(rest)) {
            auto sol = sys.solve(rhs);
            if (!sol)
                throw StructuralError("frobenius", what + " has no solution at " + mono_str(mono, *ring) +
                                                       " (window or filtration too small)");
            for (std::size_t c = 0; c < cols.size(); ++c)
                if (!(*sol)[c].is_zero()) x[c] += SuperSeries::monomial(ring, mono, (*sol)[c]);
        }
    }
    return x;
}

std::vector<HElem> first_derivatives(const PeriodMap& p) {
    std::vector<HElem> d;
    for (std::size_t c = 0; c < p.ring->nvars(); ++c) d.push_back(p.psi_flat.derivative(static_cast<int>(c)));
    return d;
}

Scalar module_pairing(const Matrix& G, const SparseVec& u, const SparseVec& v) {
    Scalar s;
    for (const auto& [i, a] : u)
        for (const auto& [j, b] : v) s += a * b * G(i, j);
    return s;
}

std::string short_str(const SuperSeries& s) {
    std::string r = s.str();
    if (r.size() > 200) r = r.substr(0, 200) + "...";
    return r;
}

} // namespace

StructureConstants structure_constants(const PeriodMap& p) {
    const std::size_t dim = p.ring->nvars();
    const auto D = first_derivatives(p);
    std::vector<HElem> cols;
    for (const auto& d : D) cols.push_back(shift_nu(d.truncated(p.order - 2), -2));
    StructureConstants A(dim, std::vector<std::vector<SuperSeries>>(dim));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b) {
            const HElem target = D[b].derivative(static_cast<int>(a));
            A[a][b] = solve_series(cols, target, p.order - 2,
                                   "d_" + p.ring->names[a] + " d_" + p.ring->names[b] + " Psi");
        }
    return A;
}

std::vector<int> conjugation_signs(const ModelPair& pair, const MCSolution& sol, const VhsFrame& frame) {
    if (!pair.pairing) throw ConfigurationError("frobenius", "model has no pairing");
    const Matrix& G = *pair.pairing;
    std::vector<int> signs;
    for (std::size_t a = 0; a < sol.generators.size(); ++a) {
        const SparseVec& gen = sol.generators[a];
        const int pa = sol.ring->parity[a] & 1;
        std::optional<int> alpha;
        for (std::size_t x = 0; x < frame.dim(); ++x)
            for (std::size_t y = 0; y < frame.dim(); ++y) {
                const Scalar lhs = module_pairing(G, pair.m.circ.apply(gen, frame.reps[x]), frame.reps[y]);
                Scalar rhs = module_pairing(G, frame.reps[x], pair.m.circ.apply(gen, frame.reps[y]));
                if (lhs.is_zero() && rhs.is_zero()) continue;
                if (frame.parity(static_cast<int>(x)) & pa) rhs = -rhs;
                int s = 0;
                if (lhs == rhs) s = 1;
                else if (lhs == -rhs) s = -1;
                if (s == 0 || (alpha && *alpha != s))
                    throw StructuralError("frobenius", "action of " + sol.ring->names[a] +
                                                           " is not self-adjoint up to sign");
                alpha = s;
            }
        signs.push_back(alpha ? -*alpha : 1);
    }
    return signs;
}

HElem reflect_hbar(const PeriodMap& p, const HElem& psi, const std::vector<int>& signs) {
    const auto& ring = *psi.ring;
    return psi.map([&](const HSeries& s) {
        return s.map_coefficients([&](const Mono& mu, const HbarLaurent& c) {
            HbarLaurent r(c.window());
            int shift = 0;
            int sign = 1;
            for (std::size_t a = 0; a < mu.size(); ++a) {
                shift += mu[a] * p.nu_shift[a];
                if (mu[a] % 2 && signs[a] < 0) sign = -sign;
            }
            for (const auto& [m, x] : c.terms()) {
                const int e = m - p.eta_weight - shift;
                if (e % 2 != 0)
                    throw InvariantViolation("frobenius", "term " + mono_str(mu, ring) + " nu^" + std::to_string(m) +
                                                              " is not homogeneous");
                const int s = sign * sign_of(e / 2);
                r += HbarLaurent::monomial(m, s > 0 ? x : -x, c.window());
            }
            return r;
        });
    });
}

namespace {

struct RawMetric {
    Matrix g;
    std::string witness;
};

RawMetric raw_metric(const PeriodMap& p, const std::vector<int>& signs) {
    const std::size_t dim = p.ring->nvars();
    if (!p.frame.gram) throw ConfigurationError("frobenius", "model has no pairing");
    const int keep = p.order - 1;
    const Window w = p.ring->window;
    const RingPtr wide = make_ring(p.ring->names, p.ring->parity, keep, Window{2 * w.lo, 2 * w.hi});
    auto rebase = [&](const HElem& x) {
        return x.in_ring(wide).map([&](const HSeries& s) {
            return s.map_coefficients([&](const Mono&, const HbarLaurent& c) { return c.with_window(wide->window); });
        });
    };
    std::vector<HElem> D;
    for (const auto& d : first_derivatives(p)) D.push_back(rebase(d));
    const HElem reflected = reflect_hbar(p, p.psi_flat, signs);
    const int eta_parity = p.eta.c.empty() ? 0 : p.frame.parity(p.eta.c.begin()->first) & 1;
    const int scale = 4 - 2 * p.frame.n;
    RawMetric out{Matrix(dim, dim), {}};
    const Mono zero(dim, 0);
    for (std::size_t b = 0; b < dim; ++b) {
        const HElem Db = rebase(reflected.derivative(static_cast<int>(b)));
        for (std::size_t a = 0; a < dim; ++a) {
            HSeries s = apply_pairing(*p.frame.gram, p.frame.classes, D[a], Db);
            s = s.map_coefficients([scale](const Mono&, const HbarLaurent& c) { return c.shifted(scale); });
            if (((eta_parity & p.ring->parity[b]) + p.frame.n) & 1) s = -s;
            for (const auto& [m, c] : s.terms())
                for (const auto& [k, x] : c.terms())
                    if ((m != zero || k != 0) && out.witness.empty())
                        out.witness = "g(" + p.ring->names[a] + "," + p.ring->names[b] + ") has " + x.str() + " " +
                                      mono_str(m, *wide) + " nu^" + std::to_string(k);
            out.g(a, b) = s.constant_term().coefficient(0);
        }
    }
    return out;
}

} // namespace

Matrix metric(const PeriodMap& p, const std::vector<int>& signs) {
    auto raw = raw_metric(p, signs);
    if (!raw.witness.empty()) throw StructuralError("frobenius", raw.witness);
    return raw.g;
}

SuperSeries potential(const StructureConstants& A, const Matrix& g, const RingPtr& ring) {
    const std::size_t dim = ring->nvars();
    const RingPtr big = with_order(ring, ring->order + 1);
    SuperSeries phi(big);
    std::vector<SuperSeries> t;
    for (std::size_t a = 0; a < dim; ++a) t.push_back(SuperSeries::variable(big, static_cast<int>(a)));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c) {
                SuperSeries abc(big);
                for (std::size_t d = 0; d < dim; ++d)
                    if (!g(d, c).is_zero()) abc += A[a][b][d].in_ring(big).scaled(g(d, c));
                if (abc.is_zero()) continue;
                // Homogeneous pieces of degree k + 3 get 1 / ((k+3)(k+2)(k+1)).
                const SuperSeries lifted = abc.map_coefficients([](const Mono& m, const Scalar& x) {
                    const long k = mono_degree(m);
                    return x * Scalar(1, (k + 3) * (k + 2) * (k + 1));
                });
                phi += t[c] * t[b] * t[a] * lifted;
            }
    return phi;
}

std::vector<SuperSeries> euler_field(const PeriodMap& p) {
    const auto D = first_derivatives(p);
    const HElem target = p.psi_flat.map([](const HSeries& s) {
        return s.map_coefficients([](const Mono&, const HbarLaurent& c) {
            HbarLaurent r(c.window());
            for (const auto& [m, x] : c.terms()) r += HbarLaurent::monomial(m, x * Scalar(-m, 2), c.window());
            return r;
        });
    });
    return solve_series(D, target, p.order - 1, "-hbar d Psi / d hbar");
}

FrobeniusData frobenius(const ModelPair& pair, const MCSolution& sol, const PeriodMap& p) {
    FrobeniusData f;
    f.n = p.frame.n;
    f.order = p.order;
    f.ring = p.ring;
    f.unit = p.unit_param;
    f.extraction = Report("extraction");
    f.A = structure_constants(p);
    f.extraction.add("structure constants solve exactly", true);
    const auto signs = conjugation_signs(pair, sol, p.frame);
    auto raw = raw_metric(p, signs);
    f.extraction.add("g constant and hbar independent", raw.witness.empty(), raw.witness);
    f.g = raw.g;
    f.potential = potential(f.A, f.g, f.ring);
    f.euler = euler_field(p);
    f.extraction.add("Euler field solves exactly", true);
    return f;
}

Report verify_frobenius(const FrobeniusData& f) {
    Report r("frobenius");
    r.merge(f.extraction);
    const std::size_t dim = f.dim();
    const auto& ring = f.ring;
    const int N = f.order;
    auto par = [&](std::size_t a) { return f.parity(static_cast<int>(a)); };
    auto name = [&](std::size_t a) { return ring->names[a]; };
    auto trip = [&](std::size_t a, std::size_t b, std::size_t c) { return name(a) + "," + name(b) + "," + name(c); };

    std::vector<std::vector<std::vector<SuperSeries>>> low(
        dim, std::vector<std::vector<SuperSeries>>(dim, std::vector<SuperSeries>(dim, SuperSeries(ring))));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t b = 0; b < dim; ++b)
            for (std::size_t c = 0; c < dim; ++c) {
                SuperSeries s(ring);
                for (std::size_t d = 0; d < dim; ++d)
                    if (!f.g(d, c).is_zero()) s += f.A[a][b][d].scaled(f.g(d, c));
                low[a][b][c] = s;
            }

    std::string w;
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t c = 0; c < dim && w.empty(); ++c) {
                const SuperSeries d3 = f.potential.derivative(static_cast<int>(c))
                                           .derivative(static_cast<int>(b))
                                           .derivative(static_cast<int>(a))
                                           .in_ring(ring)
                                           .truncated(N - 2);
                if (!(d3 == low[a][b][c].truncated(N - 2))) w = trip(a, b, c) + ": " + short_str(d3 - low[a][b][c]);
            }
    r.add("d^3 Phi = A_abc", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t c = 0; c < dim && w.empty(); ++c) {
                SuperSeries ab = low[b][a][c];
                if (par(a) & par(b)) ab = -ab;
                SuperSeries bc = low[a][c][b];
                if (par(b) & par(c)) bc = -bc;
                if (!(low[a][b][c] == ab) || !(low[a][b][c] == bc)) w = trip(a, b, c);
            }
    r.add("A_abc totally supersymmetric", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t c = 0; c < dim && w.empty(); ++c)
                for (std::size_t d = 0; d < dim && w.empty(); ++d) {
                    SuperSeries lhs = f.A[a][b][c].derivative(static_cast<int>(d)).truncated(N - 3);
                    SuperSeries rhs = f.A[d][b][c].derivative(static_cast<int>(a)).truncated(N - 3);
                    if (par(a) & par(d)) rhs = -rhs;
                    if (!(lhs == rhs)) w = trip(a, b, c) + "," + name(d);
                }
    r.add("d_d A^c_ab = (-1)^(ad) d_a A^c_db", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t d = 0; d < dim && w.empty(); ++d)
                for (std::size_t e = 0; e < dim && w.empty(); ++e) {
                    SuperSeries lhs(ring), rhs(ring);
                    for (std::size_t c = 0; c < dim; ++c) {
                        lhs += f.A[a][b][c] * f.A[c][d][e];
                        rhs += f.A[b][d][c] * f.A[c][a][e];
                    }
                    if ((par(a) * (par(b) + par(d))) & 1) rhs = -rhs;
                    lhs = lhs.truncated(N - 2);
                    rhs = rhs.truncated(N - 2);
                    if (!(lhs == rhs)) w = name(a) + "," + name(b) + "," + name(d) + " -> " + name(e) + ": " +
                                           short_str(lhs - rhs);
                }
    r.add("WDVV", w.empty(), w);

    w.clear();
    if (!f.unit) {
        w = "no unit parameter";
    } else {
        const std::size_t u = static_cast<std::size_t>(*f.unit);
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t c = 0; c < dim && w.empty(); ++c) {
                const SuperSeries want = b == c ? SuperSeries::scalar(ring, 1) : SuperSeries(ring);
                if (!(f.A[u][b][c] == want)) w = "A^" + name(c) + "_" + name(u) + name(b);
            }
    }
    r.add("A^c_0b = delta^c_b", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b) {
            Scalar ba = f.g(b, a);
            if (par(a) & par(b)) ba = -ba;
            if (f.g(a, b) != ba) w = name(a) + "," + name(b);
        }
    if (w.empty() && determinant(f.g).is_zero()) w = "degenerate";
    r.add("g supersymmetric and nondegenerate", w.empty(), w);

    // Lie derivatives along E.
    auto along = [&](const SuperSeries& s) {
        SuperSeries out(ring);
        for (std::size_t c = 0; c < dim; ++c) out += f.euler[c] * s.derivative(static_cast<int>(c));
        return out;
    };
    std::vector<std::vector<SuperSeries>> dE(dim, std::vector<SuperSeries>(dim));
    for (std::size_t a = 0; a < dim; ++a)
        for (std::size_t c = 0; c < dim; ++c) dE[a][c] = f.euler[c].derivative(static_cast<int>(a));

    w.clear();
    const Scalar conformal(2 - f.n);
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b) {
            SuperSeries s(ring);
            for (std::size_t c = 0; c < dim; ++c) {
                if (!f.g(c, b).is_zero()) s += dE[a][c].scaled(f.g(c, b));
                if (!f.g(a, c).is_zero()) {
                    SuperSeries t = dE[b][c].scaled(f.g(a, c));
                    if ((par(a) * (par(b) + par(c))) & 1) t = -t;
                    s += t;
                }
            }
            s = s.truncated(N - 2);
            const SuperSeries want = SuperSeries::scalar(ring, f.g(a, b) * conformal);
            if (!(s == want)) w = name(a) + "," + name(b) + ": " + short_str(s - want);
        }
    r.add("L_E g = (2-n) g", w.empty(), w);

    w.clear();
    for (std::size_t a = 0; a < dim && w.empty(); ++a)
        for (std::size_t b = 0; b < dim && w.empty(); ++b)
            for (std::size_t d = 0; d < dim && w.empty(); ++d) {
                SuperSeries s = along(f.A[a][b][d]);
                for (std::size_t c = 0; c < dim; ++c) {
                    s -= f.A[a][b][c] * dE[c][d];
                    s += dE[a][c] * f.A[c][b][d];
                    SuperSeries t = dE[b][c] * f.A[a][c][d];
                    if ((par(a) * (par(b) + par(c))) & 1) t = -t;
                    s += t;
                }
                s = s.truncated(N - 3);
                const SuperSeries want = f.A[a][b][d].truncated(N - 3);
                if (!(s == want)) w = trip(a, b, d) + ": " + short_str(s - want);
            }
    r.add("L_E o = o", w.empty(), w);
    return r;
}

} // namespace sivhs
