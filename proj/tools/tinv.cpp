// tinv: tree invariants of string links and closed links from Gauss diagrams.
//
// Exit status: 0 success, 1 domain error (bad file, bad indices, failed verification), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "tinv/diagram.hpp"
#include "tinv/invariants.hpp"
#include "tinv/milnor.hpp"
#include "tinv/moves.hpp"
#include "tinv/tree.hpp"

using json = nlohmann::ordered_json;
using namespace tinv;

namespace {

struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GaussDiagram load(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) throw input_error(path + ": cannot open file");
        ss << f.rdbuf();
    }
    try {
        return parse_gauss(ss.str());
    } catch (const parse_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

// Text rendering of flat objects: key=value pairs on one line.
std::string flat_text(const json& j) {
    std::string s;
    for (const auto& [k, v] : j.items()) {
        if (!s.empty()) s += ' ';
        s += k + '=';
        if (v.is_array()) {
            std::vector<int> xs = v.get<std::vector<int>>();
            s += join(xs);
        } else if (v.is_string()) {
            s += v.get<std::string>();
        } else {
            s += v.dump();
        }
    }
    return s;
}

void emit(const json& j, const std::string& format) {
    std::cout << (format == "json" ? j.dump() : flat_text(j)) << '\n';
}

ArcBreak arc_of(const std::string& s) { return s == "underpass" ? ArcBreak::at_underpass : ArcBreak::at_overpass; }

// Token list of a tree component with leaves relabelled by I.
json tree_order(const TreeDiagram& a, const std::vector<int>& I) {
    json order = json::object();
    for (int c = 1; c <= a.size(); ++c) {
        json toks = json::array();
        for (const auto& t : a.component(c))
            toks.push_back(std::string(t.role == Role::head ? "h" : "t") + std::to_string(I[t.partner - 1]));
        order[std::to_string(I[c - 1])] = toks;
    }
    return order;
}

json tree_arrows(const TreeDiagram& a, const std::vector<int>& I) {
    json arrows = json::array();
    for (int c = 1; c <= a.size(); ++c)
        if (c != a.trunk()) arrows.push_back({I[a.head_of(c) - 1], I[c - 1]});
    return arrows;
}

struct VerifyOptions {
    int n = 3;
    int arrows = 8;
    int walks = 10;
    int moves = 20;
    std::uint64_t seed = 0;
};

// Random closed diagrams, random walks; checks residue invariance, agreement with Milnor
// residues and the string-link relations on every diagram visited.
int verify(const VerifyOptions& o, const std::string& format) {
    if (o.n < 2 || o.n > 6) throw domain_error("--n must be between 2 and 6");
    long checks = 0;
    json failures = json::array();
    std::mt19937_64 rng(o.seed);
    for (int w = 0; w < o.walks; ++w) {
        const GaussDiagram start = close(random_string_link(o.n, o.arrows, rng()));
        const auto walk = random_walk(start, o.moves, rng());
        ZTable base(start);
        const auto sets = [&] {
            std::vector<std::vector<int>> out;
            for (std::uint32_t mask = 1; mask < (1u << o.n); ++mask) {
                std::vector<int> J;
                for (int b = 0; b < o.n; ++b)
                    if ((mask >> b) & 1u) J.push_back(b + 1);
                if (J.size() >= 2 && J.size() <= 4) out.push_back(J);
            }
            return out;
        }();
        for (std::size_t s = 0; s < walk.size(); ++s) {
            const GaussDiagram& g = walk[s].diagram;
            ZTable t(g);
            std::vector<std::string> bad;
            for (const auto& I : sets) {
                for (int j : I) {
                    ++checks;
                    if (!(t.residue(I, j) == base.residue(I, j)))
                        bad.push_back("residue I=" + join(I) + " trunk=" + std::to_string(j));
                }
                ++checks;
                const std::vector<int> rest(I.begin() + 1, I.end());
                if (!(t.residue(I, I.front()) == mu_bar(g, rest, I.front())))
                    bad.push_back("milnor I=" + join(I));
                ++checks;
                if (!check_reversal(cut(g), I)) bad.push_back("reversal I=" + join(I));
                for (int j : I) {
                    ++checks;
                    if (!check_s2(cut(g), I, j)) bad.push_back("reflection I=" + join(I) + " trunk=" + std::to_string(j));
                }
                for (int k = 2; k < static_cast<int>(I.size()); ++k) {
                    ++checks;
                    if (!check_s1(cut(g), I, k)) bad.push_back("split I=" + join(I) + " k=" + std::to_string(k));
                }
            }
            if (!bad.empty()) {
                json traj = json::array();
                for (std::size_t q = 0; q <= s; ++q) traj.push_back(serialize(walk[q].diagram));
                failures.push_back({{"walk", w}, {"step", s}, {"failed", bad}, {"trajectory", traj}});
                break;
            }
        }
    }
    json report = {{"seed", o.seed}, {"n", o.n}, {"arrows", o.arrows}, {"walks", o.walks}, {"moves", o.moves},
                   {"checks", checks}, {"failures", failures.size()}};
    if (format == "json") {
        report["counterexamples"] = failures;
        std::cout << report.dump() << '\n';
    } else {
        std::cout << flat_text(report) << '\n';
        for (const auto& f : failures) {
            std::cout << "walk " << f["walk"].get<int>() << " step " << f["step"].get<std::size_t>() << ":";
            for (const auto& b : f["failed"]) std::cout << ' ' << b.get<std::string>() << ';';
            std::cout << '\n';
            for (const auto& d : f["trajectory"]) std::cout << d.get<std::string>() << "--\n";
        }
    }
    return failures.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tree invariants of string links and closed links from Gauss diagrams"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));

    std::string input, arc = "overpass";
    std::vector<int> I, seq;
    int trunk = 0;
    bool count_only = false;
    VerifyOptions vo;

    auto* compute = app.add_subcommand("compute", "Z_{I;j} of a string link, or its residue on a closed link");
    compute->add_option("--input", input, "Gauss diagram file, - for stdin")->required();
    compute->add_option("--I", I, "Increasing component indices, comma separated")->required()->delimiter(',');
    compute->add_option("--trunk", trunk, "Trunk component, an element of I")->required();

    auto* milnor = app.add_subcommand("milnor", "Milnor invariant mu_{seq;j} with its indeterminacy");
    milnor->add_option("--input", input, "Gauss diagram file, - for stdin")->required();
    milnor->add_option("--Iseq", seq, "Index sequence, comma separated")->required()->delimiter(',');
    milnor->add_option("--trunk", trunk, "Longitude component")->required();
    milnor->add_option("--arc", arc, "Where arcs break")->check(CLI::IsMember({"overpass", "underpass"}));

    auto* poly = app.add_subcommand("poly", "The arrow polynomial Z_{I;j}");
    poly->add_option("--I", I, "Increasing component indices")->required()->delimiter(',');
    poly->add_option("--trunk", trunk, "Trunk component")->required();

    auto* trees = app.add_subcommand("trees", "Planar tree diagrams with leaves I and the given trunk");
    trees->add_option("--I", I, "Increasing component indices")->required()->delimiter(',');
    trees->add_option("--trunk", trunk, "Trunk component")->required();
    trees->add_flag("--count", count_only, "Print only the number of trees");

    auto* ver = app.add_subcommand("verify", "Random walks checking invariance and identities");
    ver->add_option("--seed", vo.seed, "Random seed")->required();
    ver->add_option("--n", vo.n, "Number of components");
    ver->add_option("--arrows", vo.arrows, "Maximum arrows of the starting diagrams");
    ver->add_option("--walks", vo.walks, "Number of walks");
    ver->add_option("--moves", vo.moves, "Moves per walk");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) {
            const GaussDiagram g = load(input);
            json out;
            if (g.kind() == Kind::closed) {
                const Residue r = z_bar(g, I, trunk);
                out = {{"value", r.value}, {"modulus", r.modulus}};
            } else {
                out = {{"value", z_string(g, I, trunk)}};
            }
            out["I"] = I;
            out["trunk"] = trunk;
            out["kind"] = std::string(kind_name(g.kind()));
            emit(out, format);
        } else if (*milnor) {
            const GaussDiagram g = load(input);
            const GaussDiagram s = g.kind() == Kind::closed ? cut(g) : g;
            const std::int64_t m = mu(s, seq, trunk, arc_of(arc));
            const std::int64_t d = delta_mu(s, seq, trunk, MuFamily::full, arc_of(arc));
            const Residue r = make_residue(m, d);
            emit(json{{"mu", m}, {"delta", d}, {"residue", r.value}}, format);
        } else if (*poly) {
            const ArrowPolynomial p = tree_polynomial(I, trunk);
            if (format == "text") {
                for (const auto& [key, term] : p.terms) std::cout << term.second << ' ' << key << '\n';
            } else {
                json terms = json::array();
                for (const auto& [key, term] : p.terms)
                    terms.push_back({{"coef", term.second}, {"arrows", tree_arrows(term.first, p.I)},
                                     {"order", tree_order(term.first, p.I)}});
                std::cout << json{{"terms", terms}}.dump() << '\n';
            }
        } else if (*trees) {
            const ArrowPolynomial p = tree_polynomial(I, trunk);
            if (count_only) {
                std::cout << p.terms.size() << '\n';
            } else if (format == "text") {
                for (const auto& [key, term] : p.terms) std::cout << labeled_key(term.first, p.I) << '\n';
            } else {
                json out = json::array();
                for (const auto& [key, term] : p.terms)
                    out.push_back({{"key", key}, {"labeled", labeled_key(term.first, p.I)}, {"sign", term.second}});
                std::cout << json{{"trees", out}}.dump() << '\n';
            }
        } else if (*ver) {
            return verify(vo, format);
        }
    } catch (const input_error& e) {
        std::cerr << "tinv: " << e.what() << '\n';
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "tinv: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
