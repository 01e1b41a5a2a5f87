#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tinv {

struct parse_error : std::runtime_error {
    std::size_t line;
    std::size_t column;
    parse_error(const std::string& msg, std::size_t ln, std::size_t col)
        : std::runtime_error("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " + msg),
          line(ln), column(col) {}
};

// Bad indices, wrong diagram kind, malformed diagram data.
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

enum class Kind { string_link, closed };
enum class Role : std::uint8_t { head = 0, tail = 1 };

inline std::string_view kind_name(Kind k) { return k == Kind::closed ? "closed" : "string"; }

struct Endpoint {
    int arrow;
    Role role;
    friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

// Arrows point from the under strand (tail) to the over strand (head).
struct Arrow {
    int head;
    int tail;
    int sign;
    friend bool operator==(const Arrow&, const Arrow&) = default;
};

class GaussDiagram {
public:
    GaussDiagram() = default;

    // comps[c] lists component c+1 from the basepoint; signs[a] is the sign of arrow label a.
    // Arrow ids are renumbered by first appearance, so equal diagrams compare equal.
    GaussDiagram(Kind kind, std::vector<std::vector<Endpoint>> comps, const std::vector<int>& signs)
        : kind_(kind), comps_(std::move(comps)) {
        const int m = static_cast<int>(signs.size());
        std::vector<int> relabel(m, -1);
        std::vector<std::array<int, 2>> seen(m, {0, 0});
        int next = 0;
        for (auto& comp : comps_) {
            for (auto& ep : comp) {
                if (ep.arrow < 0 || ep.arrow >= m) throw domain_error("endpoint refers to unknown arrow");
                if (++seen[ep.arrow][static_cast<int>(ep.role)] > 1)
                    throw domain_error("arrow has two endpoints with the same role");
                if (relabel[ep.arrow] < 0) relabel[ep.arrow] = next++;
            }
        }
        for (int a = 0; a < m; ++a) {
            if (seen[a][0] != 1 || seen[a][1] != 1) throw domain_error("arrow lacks a head or a tail");
            if (signs[a] != 1 && signs[a] != -1) throw domain_error("arrow sign must be +1 or -1");
        }
        arrows_.assign(m, Arrow{0, 0, 0});
        pos_.assign(m, {-1, -1});
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            for (std::size_t p = 0; p < comps_[c].size(); ++p) {
                auto& ep = comps_[c][p];
                const int old = ep.arrow;
                ep.arrow = relabel[old];
                auto& ar = arrows_[ep.arrow];
                ar.sign = signs[old];
                (ep.role == Role::head ? ar.head : ar.tail) = static_cast<int>(c) + 1;
                pos_[ep.arrow][static_cast<int>(ep.role)] = static_cast<int>(p);
            }
        }
    }

    Kind kind() const { return kind_; }
    int n() const { return static_cast<int>(comps_.size()); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<std::vector<Endpoint>>& components() const { return comps_; }

    // 1-based component index.
    const std::vector<Endpoint>& component(int c) const {
        if (c < 1 || c > n()) throw domain_error("component index out of range");
        return comps_[c - 1];
    }
    int position(int a, Role r) const { return pos_.at(a)[static_cast<int>(r)]; }
    int component_of(int a, Role r) const { return r == Role::head ? arrows_.at(a).head : arrows_.at(a).tail; }

    std::vector<int> signs() const {
        std::vector<int> s;
        s.reserve(arrows_.size());
        for (const auto& a : arrows_) s.push_back(a.sign);
        return s;
    }

    GaussDiagram with_kind(Kind k) const {
        GaussDiagram g = *this;
        g.kind_ = k;
        return g;
    }

    friend bool operator==(const GaussDiagram&, const GaussDiagram&) = default;

private:
    Kind kind_ = Kind::string_link;
    std::vector<std::vector<Endpoint>> comps_;
    std::vector<Arrow> arrows_;
    std::vector<std::array<int, 2>> pos_;
};

namespace detail {

inline bool is_label_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

inline void check_index_set(const std::vector<int>& I, int n) {
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (I[k] < 1 || I[k] > n) throw domain_error("index " + std::to_string(I[k]) + " outside 1.." + std::to_string(n));
        if (k > 0 && I[k] <= I[k - 1]) throw domain_error("index set must be strictly increasing");
    }
}

}  // namespace detail

inline GaussDiagram parse_gauss(std::string_view text) {
    struct Tok {
        std::string label;
        Role role;
        int sign;
        std::size_t line, col;
    };
    bool have_header = false;
    Kind kind = Kind::string_link;
    int n = 0;
    std::vector<std::vector<Tok>> comps;
    std::vector<bool> filled;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++lineno;
        start = end + 1;
        if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::size_t i = 0;
        auto skip_ws = [&] {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        };
        auto word = [&] {
            skip_ws();
            std::size_t b = i;
            while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ':') ++i;
            return std::pair<std::string_view, std::size_t>{line.substr(b, i - b), b + 1};
        };
        skip_ws();
        if (i == line.size()) {
            if (end == text.size()) break;
            continue;
        }
        if (!have_header) {
            auto [w0, c0] = word();
            if (w0 != "gauss") throw parse_error("expected 'gauss' header", lineno, c0);
            auto [w1, c1] = word();
            if (w1 == "string") kind = Kind::string_link;
            else if (w1 == "closed") kind = Kind::closed;
            else throw parse_error("expected 'string' or 'closed'", lineno, c1);
            auto [w2, c2] = word();
            if (w2.empty() || !std::all_of(w2.begin(), w2.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw parse_error("expected component count", lineno, c2);
            n = std::stoi(std::string(w2));
            if (n < 1) throw parse_error("component count must be positive", lineno, c2);
            skip_ws();
            if (i != line.size()) throw parse_error("trailing text after header", lineno, i + 1);
            comps.assign(n, {});
            filled.assign(n, false);
            have_header = true;
        } else {
            auto [w0, c0] = word();
            if (w0 != "component") throw parse_error("expected 'component'", lineno, c0);
            auto [w1, c1] = word();
            if (w1.empty() || !std::all_of(w1.begin(), w1.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                throw parse_error("expected component index", lineno, c1);
            int c = std::stoi(std::string(w1));
            if (c < 1 || c > n) throw parse_error("component index out of range", lineno, c1);
            if (filled[c - 1]) throw parse_error("component listed twice", lineno, c1);
            filled[c - 1] = true;
            skip_ws();
            if (i >= line.size() || line[i] != ':') throw parse_error("expected ':'", lineno, i + 1);
            ++i;
            for (;;) {
                skip_ws();
                if (i == line.size()) break;
                std::size_t col = i + 1;
                Tok t;
                t.line = lineno;
                t.col = col;
                if (line[i] == 'O') t.role = Role::head;
                else if (line[i] == 'U') t.role = Role::tail;
                else throw parse_error("token must start with O or U", lineno, col);
                ++i;
                std::size_t b = i;
                while (i < line.size() && detail::is_label_char(line[i])) ++i;
                if (i == b) throw parse_error("missing arrow label", lineno, col);
                t.label = std::string(line.substr(b, i - b));
                if (i == line.size() || (line[i] != '+' && line[i] != '-')) throw parse_error("missing sign", lineno, i + 1);
                t.sign = line[i] == '+' ? 1 : -1;
                ++i;
                if (i < line.size() && line[i] != ' ' && line[i] != '\t') throw parse_error("unexpected character", lineno, i + 1);
                comps[c - 1].push_back(std::move(t));
            }
        }
        if (end == text.size()) break;
    }
    if (!have_header) throw parse_error("missing 'gauss' header", lineno, 1);
    for (int c = 0; c < n; ++c)
        if (!filled[c]) throw parse_error("component " + std::to_string(c + 1) + " missing", lineno, 1);

    std::map<std::string, int> ids;
    std::vector<int> signs;
    std::vector<std::array<const Tok*, 2>> occ;
    std::vector<std::vector<Endpoint>> eps(n);
    for (int c = 0; c < n; ++c) {
        for (const auto& t : comps[c]) {
            auto [it, fresh] = ids.try_emplace(t.label, static_cast<int>(signs.size()));
            if (fresh) {
                signs.push_back(t.sign);
                occ.push_back({nullptr, nullptr});
            }
            const int a = it->second;
            auto& slot = occ[a][static_cast<int>(t.role)];
            if (slot) throw parse_error("label '" + t.label + "' used twice with the same role", t.line, t.col);
            slot = &t;
            if (signs[a] != t.sign) throw parse_error("label '" + t.label + "' has inconsistent signs", t.line, t.col);
            eps[c].push_back(Endpoint{a, t.role});
        }
    }
    for (const auto& o : occ) {
        const Tok* t = o[0] ? o[0] : o[1];
        if (!o[0] || !o[1]) throw parse_error("label '" + t->label + "' needs one O and one U occurrence", t->line, t->col);
    }
    return GaussDiagram(kind, std::move(eps), signs);
}

inline std::string serialize(const GaussDiagram& g) {
    std::ostringstream out;
    out << "gauss " << kind_name(g.kind()) << ' ' << g.n() << '\n';
    for (int c = 1; c <= g.n(); ++c) {
        out << "component " << c << ':';
        for (const auto& ep : g.component(c))
            out << ' ' << (ep.role == Role::head ? 'O' : 'U') << ep.arrow + 1 << (g.arrow(ep.arrow).sign > 0 ? '+' : '-');
        out << '\n';
    }
    return out.str();
}

// Builds a diagram from g keeping only arrows accepted by keep; component layout is unchanged.
template <class Pred>
GaussDiagram filter_arrows(const GaussDiagram& g, Pred keep) {
    std::vector<std::vector<Endpoint>> comps(g.n());
    std::vector<int> signs;
    std::vector<int> id(g.arrow_count(), -1);
    for (int a = 0; a < g.arrow_count(); ++a)
        if (keep(a)) {
            id[a] = static_cast<int>(signs.size());
            signs.push_back(g.arrow(a).sign);
        }
    for (int c = 1; c <= g.n(); ++c)
        for (const auto& ep : g.component(c))
            if (id[ep.arrow] >= 0) comps[c - 1].push_back(Endpoint{id[ep.arrow], ep.role});
    return GaussDiagram(g.kind(), std::move(comps), signs);
}

// Keeps all n components; arrows touching a component outside I are removed and those
// components become empty.
inline GaussDiagram restrict(const GaussDiagram& g, const std::vector<int>& I) {
    detail::check_index_set(I, g.n());
    std::vector<bool> in(g.n() + 1, false);
    for (int i : I) in[i] = true;
    return filter_arrows(g, [&](int a) { return in[g.arrow(a).head] && in[g.arrow(a).tail]; });
}

// Same arrows as restrict, but components renumbered 1..|I| in increasing order.
inline GaussDiagram restrict_compact(const GaussDiagram& g, const std::vector<int>& I) {
    GaussDiagram r = restrict(g, I);
    std::vector<std::vector<Endpoint>> comps;
    for (int i : I) comps.push_back(r.component(i));
    return GaussDiagram(g.kind(), std::move(comps), r.signs());
}

// Component i of the result is component sigma[i-1] of g.
inline GaussDiagram permute(const GaussDiagram& g, const std::vector<int>& sigma) {
    if (static_cast<int>(sigma.size()) != g.n()) throw domain_error("permutation has wrong length");
    std::vector<bool> hit(g.n() + 1, false);
    for (int s : sigma) {
        if (s < 1 || s > g.n() || hit[s]) throw domain_error("not a permutation");
        hit[s] = true;
    }
    std::vector<std::vector<Endpoint>> comps;
    for (int s : sigma) comps.push_back(g.component(s));
    return GaussDiagram(g.kind(), std::move(comps), g.signs());
}

inline GaussDiagram reflect(const GaussDiagram& g) {
    std::vector<int> rho(g.n());
    for (int i = 0; i < g.n(); ++i) rho[i] = g.n() - i;
    return permute(g, rho);
}

// Swaps head and tail of every arrow, keeping signs.
inline GaussDiagram reverse_arrows(const GaussDiagram& g) {
    auto comps = g.components();
    for (auto& comp : comps)
        for (auto& ep : comp) ep.role = ep.role == Role::head ? Role::tail : Role::head;
    return GaussDiagram(g.kind(), std::move(comps), g.signs());
}

// Sum of signs of arrows with head on i and tail on j.
inline std::int64_t linking_sum(const GaussDiagram& g, int i, int j) {
    if (i < 1 || i > g.n() || j < 1 || j > g.n()) throw domain_error("component index out of range");
    std::int64_t s = 0;
    for (const auto& a : g.arrows())
        if (a.head == i && a.tail == j) s += a.sign;
    return s;
}

}  // namespace tinv
