// Command-line front end for the sysbound library.

#include <algorithm>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sysbound/sysbound.hpp"

namespace
{

using namespace sysbound;
using json = nlohmann::ordered_json;

enum class Format { Table, Json, Csv };

/// One output cell: plain text, an integer, or an exact value q * pi^k.
using Cell = std::variant<std::string, long, PiScaled>;
using Row = std::vector<std::pair<std::string, Cell>>;

struct Output {
    Format format = Format::Table;
    int approx = 0;
};

std::string cell_text(const Cell& c, const Output& out)
{
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<long>(&c)) return std::to_string(*i);
    const auto& v = std::get<PiScaled>(c);
    std::string s = v.to_string();
    if (out.approx > 0) s += " (approx " + v.approx(out.approx) + ")";
    return s;
}

json cell_json(const Cell& c, const Output& out)
{
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* i = std::get_if<long>(&c)) return *i;
    const auto& v = std::get<PiScaled>(c);
    json j = {{"numerator", v.q.get_num().get_str()},
              {"denominator", v.q.get_den().get_str()},
              {"pi_exponent", v.pi_exponent}};
    if (out.approx > 0) j["approx"] = v.approx(out.approx);
    return j;
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string e = "\"";
    for (char ch : s) e += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return e + "\"";
}

void emit(const std::vector<Row>& rows, const Output& out)
{
    if (rows.empty()) return;
    if (out.format == Format::Json) {
        json arr = json::array();
        for (const auto& row : rows) {
            json obj = json::object();
            for (const auto& [k, v] : row) obj[k] = cell_json(v, out);
            arr.push_back(obj);
        }
        std::cout << (arr.size() == 1 ? arr[0] : arr).dump(2) << "\n";
        return;
    }
    // union of keys in first-seen order
    std::vector<std::string> keys;
    for (const auto& row : rows)
        for (const auto& [k, v] : row)
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
    auto lookup = [&](const Row& row, const std::string& k) -> std::string {
        for (const auto& [key, v] : row)
            if (key == k) return cell_text(v, out);
        return "";
    };
    if (out.format == Format::Csv) {
        for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << csv_escape(keys[i]);
        std::cout << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < keys.size(); ++i) std::cout << (i ? "," : "") << csv_escape(lookup(row, keys[i]));
            std::cout << "\n";
        }
        return;
    }
    if (rows.size() == 1) {
        std::size_t w = 0;
        for (const auto& k : keys) w = std::max(w, k.size());
        for (const auto& [k, v] : rows[0]) std::cout << k << std::string(w - k.size() + 2, ' ') << cell_text(v, out) << "\n";
        return;
    }
    std::vector<std::size_t> width;
    for (const auto& k : keys) {
        std::size_t w = k.size();
        for (const auto& row : rows) w = std::max(w, lookup(row, k).size());
        width.push_back(w);
    }
    auto line = [&](const std::function<std::string(std::size_t)>& cell) {
        for (std::size_t i = 0; i < keys.size(); ++i) {
            std::string s = cell(i);
            std::cout << s << (i + 1 < keys.size() ? std::string(width[i] - s.size() + 2, ' ') : "");
        }
        std::cout << "\n";
    };
    line([&](std::size_t i) { return keys[i]; });
    for (const auto& row : rows) line([&](std::size_t i) { return lookup(row, keys[i]); });
}

Cell exact(const Rational& q, int k = 0) { return PiScaled(q, k); }

std::string error_text(const Error& e)
{
    std::string s = e.what();
    if (!e.hypothesis().empty()) s += " [requires: " + e.hypothesis() + "]";
    return s;
}

json parse_json_arg(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error&) {
        throw CLI::ValidationError(what, "not valid JSON: " + text);
    }
}

Mat rational_matrix(const json& j, const std::string& what)
{
    if (!j.is_array()) throw CLI::ValidationError(what, "expected a JSON matrix");
    Mat m;
    for (const auto& row : j) {
        if (!row.is_array()) throw CLI::ValidationError(what, "expected a JSON matrix");
        Vec v;
        for (const auto& x : row) v.push_back(parse_rational(x.is_string() ? x.get<std::string>() : x.dump()));
        m.push_back(v);
    }
    return m;
}

std::string join_rationals(const Vec& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact systolic, volume and Gromov-width bounds for catalog manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    std::string format = "table";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "json", "csv"}));
    app.add_option("--approx", out.approx, "Append decimal approximations with this many digits")
        ->check(CLI::Range(1, 100));
    bool batch = false;
    app.add_flag("--batch", batch, "Read one space descriptor per line from standard input");

    std::string space_text;
    auto add_space = [&](CLI::App* sub) { sub->add_option("--space", space_text, "Space descriptor, e.g. \"CP(3) * S1\""); };

    auto* bound = app.add_subcommand("bound", "Sharp systolic constant");
    add_space(bound);
    std::string factor_text = "pt", kind_text = "length";
    bound->add_option("--factor", factor_text, "Second factor N for product bounds");
    bound->add_option("--kind,--theorem", kind_text, "kahler | kahler-refined | spinc-product | length | projective-refined | fano-index");

    auto* index_poly = app.add_subcommand("index-poly", "Spin^c index polynomial P(a)");
    add_space(index_poly);
    auto* length_cmd = app.add_subcommand("length", "Length of the spin^c index polynomial");
    add_space(length_cmd);
    auto* todd = app.add_subcommand("todd", "Todd genus");
    add_space(todd);
    auto* phi_cmd = app.add_subcommand("phi", "Volume functional at a class");
    add_space(phi_cmd);
    std::string class_text;
    phi_cmd->add_option("--class", class_text, "Degree-2 class, e.g. \"2*H - E\"")->required();
    auto* phi_sup_cmd = app.add_subcommand("phi-sup", "Supremum of the volume functional over the nef cone");
    add_space(phi_sup_cmd);

    auto* contractions = app.add_subcommand("contractions", "Fiber-type contractions of a multiprojective complete intersection");
    std::string ambient_text, degrees_text;
    contractions->add_option("--ambient", ambient_text, "Ambient dimensions, e.g. [2,2]")->required();
    contractions->add_option("--degrees", degrees_text, "Multidegrees, e.g. [[1,1]]")->required();

    auto* profile = app.add_subcommand("bundle-profile", "Systole profile of a projective bundle over a curve");
    std::string bdeg_text = "[0,1]", a_text = "1", b_text = "1";
    int genus = 0, sup_n = 0;
    profile->add_option("--degrees", bdeg_text, "Splitting degrees, e.g. [0,1,2]");
    profile->add_option("--genus", genus, "Genus of the base curve");
    profile->add_option("--a", a_text, "Coefficient of xi");
    profile->add_option("--b", b_text, "Coefficient of f");
    profile->add_option("--sup", sup_n, "Report the profile supremum for this rank instead");

    auto* lattice_cmd = app.add_subcommand("lattice", "Successive minima and reduced dual basis");
    std::string basis_text, gram_text, vertices_text;
    lattice_cmd->add_option("--basis", basis_text, "Basis matrix (columns generate), JSON")->required();
    lattice_cmd->add_option("--gram", gram_text, "Euclidean Gram matrix, JSON (default identity)");
    lattice_cmd->add_option("--vertices", vertices_text, "Polytope unit-ball vertices, JSON");

    auto* push = app.add_subcommand("pushforward", "Grassmannian-bundle Gysin pushforward");
    int pk = 1, pr = 2, pj = 1;
    push->add_option("--k", pk, "Subspace rank")->required();
    push->add_option("--r", pr, "Bundle rank")->required();
    push->add_option("--j", pj, "Degree")->required();

    auto* catalog_cmd = app.add_subcommand("catalog", "List sample catalog spaces with their metadata");

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
    out.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;

    auto* sub = app.get_subcommands().front();
    const bool space_cmd = sub == bound || sub == index_poly || sub == length_cmd || sub == todd || sub == phi_cmd ||
                           sub == phi_sup_cmd;
    std::vector<std::string> inputs;
    if (space_cmd) {
        if (batch) {
            std::string line;
            while (std::getline(std::cin, line))
                if (line.find_first_not_of(" \t\r") != std::string::npos) inputs.push_back(line);
        } else if (space_text.empty()) {
            std::cerr << "usage error: --space is required (or --batch)\n";
            return 2;
        } else {
            inputs.push_back(space_text);
        }
    }

    // one row per space for space-taking commands
    auto space_row = [&](const std::string& text) -> Row {
        Space x = space_from_text(text);
        Row row{{"space", x.name}};
        if (sub == bound) {
            auto kind = parse_bound_kind(kind_text);
            if (!kind) throw CLI::ValidationError("--kind", "unknown bound kind " + kind_text);
            Space n = space_from_text(factor_text);
            row.push_back({"factor", n.name});
            row.push_back({"kind", std::string(bound_name(*kind))});
            row.push_back({"bound", systolic_bound(x, n, *kind)});
        } else if (sub == index_poly) {
            IndexPolynomial ip = index_polynomial(x);
            row.push_back({"q0", exact(ip.q0)});
            row.push_back({"P(a)", ip.p.to_string("a")});
        } else if (sub == length_cmd) {
            LengthResult lr = length_with_witness(x);
            row.push_back({"length", static_cast<long>(lr.length)});
            row.push_back({"witness_a", exact(Rational(lr.witness_a))});
        } else if (sub == todd) {
            row.push_back({"todd_genus", exact(todd_genus(x))});
        } else if (sub == phi_cmd) {
            GradedClass alpha = parse_class(x, class_text);
            row.push_back({"class", alpha.to_string()});
            row.push_back({"phi", exact(phi(x, alpha))});
        } else if (sub == phi_sup_cmd) {
            PhiSup s = phi_sup(x);
            if (s.unbounded) {
                row.push_back({"phi_sup", std::string("UNBOUNDED")});
                row.push_back({"witness", s.witness->to_string()});
            } else if (s.exact) {
                row.push_back({"phi_sup", exact(s.value)});
                row.push_back({"maximizer", s.maximizer.to_string()});
                row.push_back({"attained", std::string(s.attained ? "yes" : "no (limit)")});
            } else {
                row.push_back({"phi_sup_lower", exact(s.lower)});
                row.push_back({"phi_sup_upper", exact(s.upper)});
                row.push_back({"maximizer", s.maximizer.to_string()});
            }
        }
        return row;
    };

    try {
        std::vector<Row> rows;
        int failures = 0;
        if (space_cmd) {
            for (const auto& text : inputs) {
                try {
                    rows.push_back(space_row(text));
                } catch (const Error& e) {
                    if (!batch) throw;
                    ++failures;
                    rows.push_back({{"space", text}, {"error", error_text(e)}});
                }
            }
        } else if (sub == contractions) {
            json amb = parse_json_arg(ambient_text, "--ambient");
            json deg = parse_json_arg(degrees_text, "--degrees");
            ContractionReport rep = multiproj_contractions(amb.get<std::vector<int>>(), deg.get<std::vector<std::vector<int>>>());
            for (const auto& f : rep.factors)
                rows.push_back({{"factor", static_cast<long>(f.factor)},
                                {"K_negative", std::string(f.k_negative ? "yes" : "no")},
                                {"fiber_dim", static_cast<long>(f.fiber_dim)},
                                {"minus_K_coefficient", static_cast<long>(f.minus_k_coefficient)},
                                {"dim", static_cast<long>(rep.dim)},
                                {"fano", std::string(rep.fano ? "yes" : "no")},
                                {"positive_multidegrees", std::string(rep.positive_multidegrees ? "yes" : "no")},
                                {"max_systole_order", static_cast<long>(rep.max_systole_order)}});
        } else if (sub == profile) {
            if (sup_n > 0) {
                ProfileSup ps = bundle_profile_sup(sup_n);
                rows.push_back({{"n", static_cast<long>(sup_n)}, {"sup", exact(ps.sup)}, {"x", exact(ps.x)},
                                {"e", static_cast<long>(ps.e)}});
            } else {
                json deg = parse_json_arg(bdeg_text, "--degrees");
                BundleProfile bp = bundle_systole_profile(deg.get<std::vector<int>>(), genus, parse_rational(a_text),
                                                          parse_rational(b_text));
                rows.push_back({{"sys", exact(bp.sys)}, {"s_alpha", exact(bp.s)}, {"product", exact(bp.product)}});
            }
        } else if (sub == lattice_cmd) {
            Mat basis = rational_matrix(parse_json_arg(basis_text, "--basis"), "--basis");
            NormedLattice l;
            if (!vertices_text.empty()) {
                l = make_polytope_lattice(basis, rational_matrix(parse_json_arg(vertices_text, "--vertices"), "--vertices"));
            } else {
                Mat gram = gram_text.empty() ? linalg::identity(basis.size())
                                             : rational_matrix(parse_json_arg(gram_text, "--gram"), "--gram");
                l = make_euclidean_lattice(basis, gram);
            }
            MinimaResult mins = successive_minima(l);
            ReducedDualBasis rd = reduced_dual_basis(l);
            const std::string tag = mins.squared ? "^2" : "";
            for (std::size_t i = 0; i < mins.lambda.size(); ++i)
                rows.push_back({{"j", static_cast<long>(i + 1)},
                                {"lambda_j" + tag, exact(mins.lambda[i])},
                                {"dual_u_j", join_rationals(rd.u[i])},
                                {"dual_norm" + tag, exact(rd.dual_norm[i])},
                                {"achieved" + tag, exact(rd.achieved)},
                                {"bound" + tag, exact(rd.bound)}});
        } else if (sub == push) {
            SymmetricPolynomial p = localization_pushforward(pk, pr, pj);
            Row row{{"k", static_cast<long>(pk)}, {"r", static_cast<long>(pr)}, {"j", static_cast<long>(pj)},
                    {"P", p.to_string()}};
            if (pj >= 1 && pj <= pr) row.push_back({"primitive_coefficient", exact(primitive_coefficient(pk, pr, pj))});
            rows.push_back(row);
        } else if (sub == catalog_cmd) {
            const std::vector<std::string> samples = {
                "pt", "S1", "S(2)", "S(3)", "CP(1)", "CP(2)", "CP(3)", "Q(3)", "Q(4)",
                "CI(degrees=[[3]]; ambient=[4])", "CI(degrees=[[2],[2]]; ambient=[5])",
                "CI(degrees=[[1,1]]; ambient=[2,2])", "PB(degrees=[0,1]; genus=0)", "BlP(2)", "BlP(3)",
                "CP(2) * S1", "WP(weights=[1,1,1,1,2]; degree=4)", "G25(3)"};
            for (const auto& text : samples) {
                Space x = space_from_text(text);
                rows.push_back({{"space", x.name},
                                {"real_dim", static_cast<long>(x.real_dim)},
                                {"b2", static_cast<long>(x.b2)},
                                {"fano_index", x.fano_index ? Cell(static_cast<long>(*x.fano_index)) : Cell(std::string("-"))},
                                {"ring", std::string(x.metadata_only() ? "metadata only" : "yes")}});
            }
        }
        emit(rows, out);
        return failures ? 1 : 0;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << error_text(e) << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
}
