#include "trispline/polynomial.hpp"

#include "trispline/errors.hpp"

#include <algorithm>
#include <sstream>

namespace trispline {

bool CanonicalOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int ga = a.e[0] + a.e[1];
    const int gb = b.e[0] + b.e[1];
    if (ga != gb) return ga < gb;
    const int ma = std::max(a.e[0], a.e[1]);
    const int mb = std::max(b.e[0], b.e[1]);
    if (ma != mb) return ma < mb;
    if (a.e[0] != b.e[0]) return a.e[0] > b.e[0];
    return a.e[2] < b.e[2];
}

std::vector<MultiIndex> monomials(int degree) {
    std::vector<MultiIndex> out;
    for (int i = 0; i <= degree; ++i) {
        for (int j = 0; i + j <= degree; ++j) out.push_back({{i, j, degree - i - j}});
    }
    std::sort(out.begin(), out.end(), CanonicalOrder{});
    return out;
}

// BarycentricPoly

BarycentricPoly BarycentricPoly::monomial(const MultiIndex& m, const Rational& coeff) {
    BarycentricPoly p(m.degree());
    p.add_term(m, coeff);
    return p;
}

Rational BarycentricPoly::coefficient(const MultiIndex& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void BarycentricPoly::add_term(const MultiIndex& m, const Rational& coeff) {
    if (m.degree() != degree_) throw std::invalid_argument("monomial degree does not match polynomial degree");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

BarycentricPoly BarycentricPoly::partial(int var) const {
    BarycentricPoly out(std::max(degree_ - 1, 0));
    if (degree_ == 0) return out;
    for (const auto& [m, c] : terms_) {
        const int k = m.e[static_cast<std::size_t>(var)];
        if (k == 0) continue;
        MultiIndex lowered = m;
        lowered.e[static_cast<std::size_t>(var)] -= 1;
        out.add_term(lowered, c * k);
    }
    return out;
}

BarycentricPoly& BarycentricPoly::operator+=(const BarycentricPoly& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

BarycentricPoly& BarycentricPoly::operator-=(const BarycentricPoly& other) {
    if (other.is_zero()) return *this;
    if (is_zero()) degree_ = other.degree_;
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

BarycentricPoly& BarycentricPoly::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, c] : terms_) c *= scalar;
    return *this;
}

BarycentricPoly operator*(const BarycentricPoly& a, const BarycentricPoly& b) {
    BarycentricPoly out(a.degree() + b.degree());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            out.add_term({{ma.e[0] + mb.e[0], ma.e[1] + mb.e[1], ma.e[2] + mb.e[2]}}, ca * cb);
        }
    }
    return out;
}

bool operator==(const BarycentricPoly& a, const BarycentricPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

// EdgePoly

Rational EdgePoly::coefficient(int k1, int k2) const {
    auto it = terms_.find({k1, k2});
    return it == terms_.end() ? Rational(0) : it->second;
}

void EdgePoly::add_term(int k1, int k2, const Rational& coeff) {
    if (k1 + k2 != degree_) throw std::invalid_argument("edge monomial degree does not match polynomial degree");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace({k1, k2}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

bool operator==(const EdgePoly& a, const EdgePoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

std::vector<std::pair<int, int>> edge_monomials(int degree) {
    std::vector<std::pair<int, int>> out;
    for (int k1 = degree; k1 >= 0; --k1) out.emplace_back(k1, degree - k1);
    return out;
}

// CartesianPoly

void CartesianPoly::add_term(int i, int j, const Rational& coeff) {
    if (i < 0 || j < 0 || i + j > degree_) throw std::invalid_argument("cartesian term exceeds polynomial degree");
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace({i, j}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational CartesianPoly::evaluate(const Point2& p) const {
    Rational sum = 0;
    for (const auto& [ij, c] : terms_) {
        Rational term = c;
        for (int k = 0; k < ij.first; ++k) term *= p.x;
        for (int k = 0; k < ij.second; ++k) term *= p.y;
        sum += term;
    }
    return sum;
}

CartesianPoly CartesianPoly::derivative(int rx, int ry) const {
    CartesianPoly out(std::max(degree_ - rx - ry, 0));
    for (const auto& [ij, c] : terms_) {
        auto [i, j] = ij;
        if (i < rx || j < ry) continue;
        Rational factor = c;
        for (int k = 0; k < rx; ++k) factor *= i - k;
        for (int k = 0; k < ry; ++k) factor *= j - k;
        out.add_term(i - rx, j - ry, factor);
    }
    return out;
}

// Operations

Rational evaluate(const BarycentricPoly& p, const BarycentricCoords& b) {
    Rational sum = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational term = c;
        for (std::size_t v = 0; v < 3; ++v) {
            for (int k = 0; k < m.e[v]; ++k) term *= b[v];
        }
        sum += term;
    }
    return sum;
}

BarycentricPoly from_cartesian(const CartesianPoly& p, const TriangleVertices& tri) {
    if (signed_area2(tri) == 0) throw DegenerateTriangle("triangle has zero area");
    const int d = p.degree();
    BarycentricPoly x(1);
    BarycentricPoly y(1);
    BarycentricPoly one(1);
    for (int v = 0; v < 3; ++v) {
        MultiIndex m{};
        m.e[static_cast<std::size_t>(v)] = 1;
        x.add_term(m, tri[static_cast<std::size_t>(v)].x);
        y.add_term(m, tri[static_cast<std::size_t>(v)].y);
        one.add_term(m, 1);
    }
    auto power = [](const BarycentricPoly& base, int n) {
        BarycentricPoly r = BarycentricPoly::monomial({{0, 0, 0}});
        for (int k = 0; k < n; ++k) r = r * base;
        return r;
    };

    BarycentricPoly out(d);
    for (const auto& [ij, c] : p.terms()) {
        BarycentricPoly term = power(x, ij.first) * power(y, ij.second) * power(one, d - ij.first - ij.second);
        out += term * c;
    }
    return out;
}

namespace {

BarycentricPoly derivative_once(const BarycentricPoly& p, const std::array<Rational, 3>& a) {
    BarycentricPoly out(std::max(p.degree() - 1, 0));
    for (int v = 0; v < 3; ++v) {
        if (a[static_cast<std::size_t>(v)] == 0) continue;
        out += p.partial(v) * a[static_cast<std::size_t>(v)];
    }
    return out;
}

}  // namespace

BarycentricPoly directional_derivative(const BarycentricPoly& p, const std::array<Rational, 3>& a, int r) {
    if (r < 0) throw std::invalid_argument("negative derivative order");
    if (r > p.degree()) return BarycentricPoly(0);
    BarycentricPoly out = p;
    for (int k = 0; k < r; ++k) out = derivative_once(out, a);
    return out;
}

EdgePoly restrict_to_edge(const BarycentricPoly& p, Side side, const SharedEdge& edge) {
    const auto& q_map = side == Side::A ? edge.q_map_a : edge.q_map_b;
    const int off = side == Side::A ? edge.off_edge_local_a : edge.off_edge_local_b;
    EdgePoly out(p.degree());
    for (const auto& [m, c] : p.terms()) {
        if (m.e[static_cast<std::size_t>(off)] != 0) continue;
        out.add_term(m.e[static_cast<std::size_t>(q_map[0])], m.e[static_cast<std::size_t>(q_map[1])], c);
    }
    return out;
}

Rational evaluate_cartesian_derivative(const BarycentricPoly& p, const TriangleVertices& tri, const Point2& p0,
                                       int rx, int ry) {
    const Rational m11 = tri[0].x - tri[2].x;
    const Rational m12 = tri[1].x - tri[2].x;
    const Rational m21 = tri[0].y - tri[2].y;
    const Rational m22 = tri[1].y - tri[2].y;
    const Rational det = m11 * m22 - m12 * m21;
    if (det == 0) throw DegenerateTriangle("triangle has zero area");

    // Columns of the inverse Jacobian give d(b1, b2)/dx and d(b1, b2)/dy.
    std::array<Rational, 3> grad_x{m22 / det, -m21 / det, 0};
    grad_x[2] = -grad_x[0] - grad_x[1];
    std::array<Rational, 3> grad_y{-m12 / det, m11 / det, 0};
    grad_y[2] = -grad_y[0] - grad_y[1];

    BarycentricPoly d = directional_derivative(p, grad_x, rx);
    d = directional_derivative(d, grad_y, ry);
    return evaluate(d, cartesian_to_barycentric(tri, p0));
}

// Text form

namespace {

template <class Terms, class WriteVars>
std::string render(const Terms& terms, WriteVars write_vars) {
    if (terms.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [key, c] : terms) {
        if (first) {
            out << to_string(c);
        } else {
            out << (c < 0 ? " - " : " + ") << to_string(Rational(abs(c)));
        }
        write_vars(out, key);
        first = false;
    }
    return out.str();
}

void write_power(std::ostream& out, const char* name, int k) {
    if (k == 0) return;
    out << ' ' << name;
    if (k > 1) out << '^' << k;
}

}  // namespace

std::string to_string(const BarycentricPoly& p) {
    return render(p.terms(), [](std::ostream& out, const MultiIndex& m) {
        write_power(out, "b1", m.e[0]);
        write_power(out, "b2", m.e[1]);
        write_power(out, "b3", m.e[2]);
    });
}

std::string to_string(const EdgePoly& p) {
    return render(p.terms(), [](std::ostream& out, const std::pair<int, int>& k) {
        write_power(out, "q1", k.first);
        write_power(out, "q2", k.second);
    });
}

BarycentricPoly parse_barycentric_poly(std::string_view text, int degree) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> tokens;
    for (std::string tok; in >> tok;) tokens.push_back(tok);
    if (tokens.empty()) throw ParseError("empty polynomial");

    BarycentricPoly out(degree);
    if (tokens.size() == 1 && tokens[0] == "0") return out;

    std::size_t pos = 0;
    Rational sign = 1;
    while (pos < tokens.size()) {
        Rational coeff = sign * parse_rational(tokens[pos++]);
        MultiIndex m{};
        while (pos < tokens.size() && tokens[pos].size() >= 2 && tokens[pos][0] == 'b') {
            const std::string& var = tokens[pos++];
            const int v = var[1] - '1';
            if (v < 0 || v > 2 || (var.size() > 2 && var[2] != '^')) throw ParseError("bad variable '" + var + "'");
            int k = 1;
            if (var.size() > 2) {
                const std::string exp = var.substr(3);
                if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos) {
                    throw ParseError("bad exponent in '" + var + "'");
                }
                k = std::stoi(exp);
            }
            m.e[static_cast<std::size_t>(v)] += k;
        }
        if (m.degree() != degree) {
            throw ParseError("term of degree " + std::to_string(m.degree()) + " in a degree-" + std::to_string(degree) +
                             " polynomial: '" + std::string(text) + "'");
        }
        out.add_term(m, coeff);
        if (pos == tokens.size()) break;
        if (tokens[pos] == "+") {
            sign = 1;
        } else if (tokens[pos] == "-") {
            sign = -1;
        } else {
            throw ParseError("expected '+' or '-' in '" + std::string(text) + "'");
        }
        if (++pos == tokens.size()) throw ParseError("dangling operator in '" + std::string(text) + "'");
    }
    return out;
}

}  // namespace trispline
