#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "motivic/couple.hpp"
#include "motivic/report.hpp"
#include "motivic/spectral.hpp"
#include "motivic/theorems.hpp"
#include "motivic/universe.hpp"

namespace motivic {

using nlohmann::json;

namespace {

json invariants_json(const std::pair<std::size_t, std::vector<Int>>& inv) {
    json torsion = json::array();
    for (const Int& t : inv.second) torsion.push_back(t.convert_to<long long>());
    return json{{"free_rank", inv.first}, {"torsion", torsion}};
}

json group_json(const FGAbelianGroup& g) { return invariants_json(g.isomorphism_invariants()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json tower_json(const ToyUniverse& u) {
    K0Tower t = k0_filtration(u);
    json entries = json::array();
    for (int q = 0; q <= u.max_dimension; ++q)
        entries.push_back({{"q", q}, {"group", group_json(t.a[q])}});
    return json{{"tower", entries}};
}

json pages_json(const ToyUniverse& u, const std::string& seq, int r) {
    json cols = json::array();
    if (seq == "kv") {
        TwoColumnCouple c = kv_couple(u);
        PageEngine engine(c);
        for (int q = 0; q <= u.max_dimension; ++q)
            cols.push_back({{"q", q},
                            {"col0", group_json(engine.page(r, 0, q).group)},
                            {"col1", group_json(engine.page(r, 1, q).group)}});
    } else {
        E1Pages e1 = kvl_e1(u);
        for (int q = 0; q <= u.max_dimension; ++q) {
            json col0, col1;
            if (r == 1) {
                col0 = group_json(e1.col0[q]);
                col1 = group_json(e1.col1[q].group);
            } else {
                // closed forms; pages freeze once the differentials leave the truncation
                int r_eff = std::min(r, u.max_dimension - q + 1);
                col0 = group_json(kvl_page_closed_form(u, r_eff, q));
                col1 = group_json(kvl_col1_page_closed_form(u, r, q));
            }
            cols.push_back({{"q", q}, {"col0", col0}, {"col1", col1}});
        }
    }
    return json{{"seq", seq}, {"r", r}, {"columns", cols}};
}

json k0_mod_l_json(const ToyUniverse& u) {
    auto coker = cokernel_of_hom(l_multiplication(u));
    json basis = json::array();
    for (const auto& e : larsen_lunts_basis(u)) {
        json block = json::array();
        for (const auto& id : e.block) block.push_back(id);
        basis.push_back(
            {{"representative", e.representative}, {"dimension", e.dimension}, {"block", block}});
    }
    return json{{"cokernel", group_json(coker.group)}, {"basis", basis}};
}

json kernel_l_json(const ToyUniverse& u) {
    KernelLReport rep = kernel_of_L(u);
    json witnesses = json::array();
    for (const auto& w : rep.witnesses)
        witnesses.push_back({{"expression", w.generator_label},
                             {"positive", w.positive},
                             {"negative", w.negative},
                             {"filtration_degree", w.filtration_degree},
                             {"torsion_order", w.torsion_order.convert_to<long long>()}});
    return json{{"kernel", group_json(rep.kernel)}, {"witnesses", witnesses}};
}

json obstruction_json(const ToyUniverse& u, const std::string& spec) {
    auto dot = spec.find('.');
    if (dot == std::string::npos) throw UnknownGenerator("obstruction: --aut expects classId.generator");
    ObstructionReport rep = piecewise_obstruction(u, spec.substr(0, dot), spec.substr(dot + 1));
    json out{{"class", rep.class_id},
             {"generator", rep.generator},
             {"verdict", rep.extends ? "extends" : "obstructed"}};
    if (!rep.extends) {
        out["first_page"] = rep.first_page;
        out["value"] = rep.value_text;
        out["value_position"] = {{"p", rep.value.pos.p}, {"q", rep.value.pos.q}};
    }
    return out;
}

json stable_json(const ToyUniverse& u) {
    json blocks = json::array();
    for (const auto& block : stable_partition(u)) {
        json b = json::array();
        for (const auto& id : block) b.push_back(id);
        blocks.push_back(std::move(b));
    }
    json complexities = json::object();
    for (const auto& c : u.classes) complexities[c.id] = stable_complexity(u, c.id);
    return json{{"blocks", blocks}, {"complexities", complexities}};
}

json check_json(const ToyUniverse& u, bool& internal_inconsistency) {
    json out;
    auto exactness = check_exactness(kv_couple(u));
    json exviol = json::array();
    for (const auto& v : exactness)
        exviol.push_back({{"rule", v.rule}, {"subject", v.subject}, {"detail", v.detail}});
    out["exactness"] = {{"ok", exactness.empty()}, {"violations", exviol}};

    DiffKernelReport dk = diff_iff_kernel_report(u);
    out["diff_iff_kernel"] = {{"has_nonzero_diff", dk.has_nonzero_diff},
                              {"has_psi_kernel", dk.has_psi_kernel},
                              {"agree", dk.agree()}};
    if (!exactness.empty() || !dk.agree()) internal_inconsistency = true;

    if (u.convenient && u.max_dimension >= 1) {
        RealizabilityReport rr = realizability_check(u);
        out["realizability"] = {{"applicable", true},
                                {"consistent", rr.consistent},
                                {"coker", invariants_json(rr.coker_invariants)},
                                {"stable_pages", invariants_json(rr.stable_page_invariants)},
                                {"details", rr.details}};
    } else {
        out["realizability"] = {{"applicable", false}};
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"workbench for toy motivic universes: spectral sequences over the "
                 "Grothendieck ring of a finite birational-class model"};
    app.require_subcommand(1);
    std::string path, format = "text", seq = "kv", aut_spec;
    int page_r = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("universe", path, "universe JSON document")->required();
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        return sub;
    };
    add_common(app.add_subcommand("validate", "run structural and semantic validation"));
    auto* pages = add_common(app.add_subcommand("pages", "print spectral sequence pages"));
    pages->add_option("--seq", seq, "kv or kvl")->check(CLI::IsMember({"kv", "kvl"}));
    pages->add_option("--r", page_r, "page number (>= 1)")->check(CLI::PositiveNumber);
    add_common(app.add_subcommand("k0", "print the K0 filtration tower"));
    add_common(app.add_subcommand("k0-mod-l", "cokernel of Lefschetz multiplication and the stable basis"));
    add_common(app.add_subcommand("kernel-l", "kernel of Lefschetz multiplication with witnesses"));
    auto* obstruction = add_common(app.add_subcommand("obstruction", "piecewise-automorphism obstruction"));
    obstruction->add_option("--aut", aut_spec, "classId.generator")->required();
    add_common(app.add_subcommand("stable", "stable partition and complexities"));
    add_common(app.add_subcommand("check", "exactness, realizability and diff-iff-kernel checks"));

    try {
        std::vector<std::string> args(argv.rbegin(), argv.rend());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return 2;
    }

    Report report;
    ReportFormat fmt = format == "json" ? ReportFormat::json : ReportFormat::text;
    try {
        ToyUniverse u = parse_universe(read_file(path));
        report.universe = u.name;
        CLI::App* sub = app.get_subcommands().front();
        report.command = sub->get_name();

        report.violations = validate(u);
        if (report.command == "validate") {
            report.payload = {{"valid", report.violations.empty()}};
            out << emit_report(report, fmt);
            return report.violations.empty() ? 0 : 1;
        }
        if (!report.violations.empty()) {
            report.payload = {{"error", "universe failed validation"}};
            out << emit_report(report, fmt);
            return 1;
        }

        bool internal_inconsistency = false;
        if (report.command == "pages")
            report.payload = pages_json(u, seq, page_r);
        else if (report.command == "k0")
            report.payload = tower_json(u);
        else if (report.command == "k0-mod-l")
            report.payload = k0_mod_l_json(u);
        else if (report.command == "kernel-l")
            report.payload = kernel_l_json(u);
        else if (report.command == "obstruction")
            report.payload = obstruction_json(u, aut_spec);
        else if (report.command == "stable")
            report.payload = stable_json(u);
        else if (report.command == "check")
            report.payload = check_json(u, internal_inconsistency);

        out << emit_report(report, fmt);
        return internal_inconsistency ? 3 : 0;
    } catch (const LiftFailure& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const InconsistentBoundary& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const IllFormedHom& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const NotACycle& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        // parse/schema errors and bad option values for this document
        err << e.what() << "\n";
        return 2;
    }
}

}  // namespace motivic
