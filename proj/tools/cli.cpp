#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pda/bounds.hpp"
#include "pda/caching.hpp"
#include "pda/constructions.hpp"
#include "pda/format.hpp"
#include "pda/search.hpp"
#include "pda/transform.hpp"
#include "pda/verify.hpp"

namespace pda::cli {

namespace {

using nlohmann::json;

Grid load(const std::string& path, std::istream& in) {
    if (path == "-") {
        return parse(in);
    }
    std::ifstream file(path);
    if (!file) {
        throw UsageError("cannot open " + path);
    }
    return parse(file);
}

void emit(const Grid& g, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << render(g);
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw UsageError("cannot write " + out_path);
    }
    file << render(g);
}

std::vector<std::size_t> parse_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty()) {
            continue;
        }
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(static_cast<std::size_t>(v));
        } catch (const std::exception&) {
            throw UsageError("bad list entry '" + tok + "'");
        }
    }
    return out;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const auto v = parse_list(text);
        if (v.size() != 1) {
            throw UsageError("bad range '" + text + "'");
        }
        return {v[0], v[0]};
    }
    const auto lo = parse_list(text.substr(0, dots));
    const auto hi = parse_list(text.substr(dots + 2));
    if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0]) {
        throw UsageError("bad range '" + text + "'");
    }
    return {lo[0], hi[0]};
}

/// "2", or "f-2" / "F-2" relative to the row count.
std::size_t parse_z(const std::string& text, std::size_t f) {
    if (!text.empty() && (text[0] == 'f' || text[0] == 'F')) {
        if (text.size() < 3 || text[1] != '-') {
            throw UsageError("bad Z '" + text + "'");
        }
        const auto off = parse_list(text.substr(2));
        if (off.size() != 1 || off[0] > f) {
            throw UsageError("bad Z '" + text + "'");
        }
        return f - off[0];
    }
    const auto v = parse_list(text);
    if (v.size() != 1) {
        throw UsageError("bad Z '" + text + "'");
    }
    return v[0];
}

std::chrono::milliseconds parse_duration(const std::string& text) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("bad duration '" + text + "'");
    }
    const std::string unit = text.substr(used);
    double ms = 0;
    if (unit.empty() || unit == "s") {
        ms = v * 1000;
    } else if (unit == "ms") {
        ms = v;
    } else if (unit == "m" || unit == "min") {
        ms = v * 60'000;
    } else {
        throw UsageError("bad duration unit in '" + text + "'");
    }
    if (ms <= 0) {
        throw UsageError("duration must be positive");
    }
    return std::chrono::milliseconds(static_cast<std::int64_t>(ms));
}

std::chrono::milliseconds default_budget(const char* fallback) {
    if (const char* env = std::getenv("PDA_SEARCH_BUDGET"); env != nullptr && *env != '\0') {
        return parse_duration(env);
    }
    return parse_duration(fallback);
}

json params_json(const Grid& g) {
    const Params p = Params::of(g);
    return {{"k", p.k}, {"f", p.f}, {"z", p.z ? json(*p.z) : json(nullptr)}, {"s", p.s}, {"d", p.d}};
}

Role parse_role(const std::string& name) {
    if (name == "rows" || name == "r") {
        return Role::rows;
    }
    if (name == "columns" || name == "cols" || name == "c") {
        return Role::columns;
    }
    if (name == "symbols" || name == "syms" || name == "s") {
        return Role::symbols;
    }
    throw UsageError("unknown role '" + name + "'");
}

Permutation perm_or_identity(const std::string& text, std::size_t n) {
    if (text.empty()) {
        Permutation p(n);
        std::iota(p.begin(), p.end(), std::size_t{0});
        return p;
    }
    return parse_list(text);
}

// Mixed-radix counter over all N^K demand vectors.
bool next_demands(std::vector<std::size_t>& d, std::size_t n) {
    for (auto& v : d) {
        if (++v < n) {
            return true;
        }
        v = 0;
    }
    return false;
}

struct Options {
    // construct
    std::size_t f = 0;
    std::size_t z = 0;
    std::size_t s = 0;
    std::size_t k = 0;
    std::size_t m = 1;
    bool recipe = false;
    std::string out_path;

    // files
    std::string input = "-";
    std::string input2;

    // verify
    std::string expect_z;
    bool structural = false;

    // transform
    std::string row_perm, col_perm, sym_perm, rows, cols, roles;
    bool compact = false;

    // bound
    std::optional<std::size_t> bound_k, bound_s;
    std::optional<std::int64_t> refute;
    std::string z_text;

    // search
    std::string budget;
    unsigned threads = 0;
    bool no_prune = false;
    std::uint64_t node_budget = 0;

    // simulate
    std::string pda_path;
    std::size_t files = 0;
    std::string demands;
    std::uint64_t seed = 0;
    std::size_t subfile_bytes = 32;
    bool all_demands = false;

    // decompose
    std::string block_out, rest_out;

    // catalog
    std::string f_range = "2..6";
    std::size_t s_min = 1;
    std::size_t s_max = 20;
    bool no_search = false;
};

SearchConfig search_config(const Options& o, const char* fallback) {
    SearchConfig cfg;
    cfg.time_budget = o.budget.empty() ? default_budget(fallback) : parse_duration(o.budget);
    cfg.parallel_width = o.threads;
    cfg.prune_with_bounds = !o.no_prune;
    if (o.node_budget > 0) {
        cfg.node_budget = o.node_budget;
    }
    return cfg;
}

int cmd_verify(const Options& o, std::istream& in, std::ostream& out) {
    const Grid g = load(o.input, in);
    std::optional<std::size_t> z;
    if (!o.expect_z.empty()) {
        z = parse_z(o.expect_z, g.rows());
    }
    const VerificationReport report = verify(g, z);
    json j = params_json(g);
    j["valid"] = report.valid;
    j["symbols_used"] = g.symbols_used();
    j["violations"] = json::array();
    for (const auto& v : report.violations) {
        j["violations"].push_back(describe(v));
    }
    j["multiplicity"] = report.multiplicity;
    if (o.structural) {
        j["structural"] = structural_checks(g).to_json();
    }
    out << j.dump() << '\n';
    return report.valid ? kOk : kInvalid;
}

int cmd_bound(const Options& o, std::ostream& out) {
    const auto f = static_cast<std::int64_t>(o.f);
    if (o.z_text.empty()) {
        throw UsageError("bound needs --z");
    }
    const auto z = static_cast<std::int64_t>(parse_z(o.z_text, o.f));
    json j{{"f", f}, {"z", z}};
    int code = kOk;
    if (o.bound_k) {
        const auto k = static_cast<std::int64_t>(*o.bound_k);
        j["k"] = k;
        j["lower_S_sum_f"] = lower_bound_s(k, f, z).to_json();
        j["lower_S_recursive"] = recursive_lower_bound_s(k, f, z).to_json();
        SminMemo memo;
        j["lower_S_recursive_nested"] = recursive_lower_bound_s(k, f, z, recursive_oracle(memo)).to_json();
        if (z + 2 == f && f >= 3) {
            j["lower_S_yb2"] = lower_bound_s_fz2(k, f).to_json();
        }
    }
    if (o.bound_s) {
        const auto s = static_cast<std::int64_t>(*o.bound_s);
        j["s"] = s;
        j["upper_K"] = upper_bound_k(f, z, s).to_json();
        if (z + 2 == f) {
            j["conjectured_K"] = conjectured_k_fz2(f, s).to_json();
        }
        if (o.refute) {
            if (z + 2 != f || f < 3) {
                throw UsageError("--refute applies to Z = F-2 with F >= 3");
            }
            const bool holds = pjd_holds(*o.refute, f, s);
            j["pjd"] = {{"k", *o.refute}, {"holds", holds}, {"refuted", !holds}};
            code = holds ? kOk : kInvalid;
        }
    }
    if (!o.bound_k && !o.bound_s) {
        throw UsageError("bound needs --k and/or --s");
    }
    out << j.dump() << '\n';
    return code;
}

int cmd_simulate(const Options& o, std::istream& in, std::ostream& out) {
    const Grid g = load(o.pda_path, in);
    caching::Instance inst;
    inst.n_files = o.files;
    inst.k_users = g.cols();
    inst.f_subfiles = g.rows();
    inst.subfile_size = o.subfile_bytes;
    inst.seed = o.seed;

    std::uint64_t assignments = 0;
    std::uint64_t failures = 0;
    json summary;
    const auto run_one = [&] {
        const auto t = caching::simulate(g, inst);
        ++assignments;
        failures += t.decoded_all() ? 0 : 1;
        if (summary.is_null()) {
            summary = t.summary();
        }
    };
    if (o.all_demands) {
        inst.demands.assign(g.cols(), 0);
        do {
            run_one();
        } while (next_demands(inst.demands, inst.n_files));
    } else {
        inst.demands = parse_list(o.demands);
        run_one();
    }
    summary["decoded_all"] = failures == 0;
    summary["assignments"] = assignments;
    summary["symbols_used"] = g.symbols_used();
    summary["s"] = g.s_bound();
    out << summary.dump() << '\n';
    return failures == 0 ? kOk : kInvalid;
}

int cmd_decompose(const Options& o, std::istream& in, std::ostream& out) {
    const Grid g = load(o.input, in);
    SearchConfig cfg;
    cfg.time_budget = o.budget.empty() ? default_budget("60s") : parse_duration(o.budget);
    const auto result = decompose(g, cfg);
    if (!result) {
        out << json{{"found", false}}.dump() << '\n';
        return kInvalid;
    }
    json j{{"found", true},
           {"block", params_json(result->block)},
           {"remainder", params_json(result->remainder)},
           {"block_columns", result->block_columns},
           {"block_valid", is_valid(result->block)},
           {"remainder_valid", is_valid(result->remainder)}};
    out << j.dump() << '\n';
    if (!o.block_out.empty()) {
        emit(result->block, o.block_out, out);
    }
    if (!o.rest_out.empty()) {
        emit(result->remainder, o.rest_out, out);
    }
    return kOk;
}

int cmd_catalog(const Options& o, std::ostream& out) {
    const auto [f_lo, f_hi] = parse_range(o.f_range);
    if (f_lo < 2 || o.s_min < 1 || o.s_min > o.s_max) {
        throw UsageError("catalog needs F >= 2 and 1 <= s-min <= s-max");
    }
    if (!o.z_text.empty() && o.z_text != "f-2" && o.z_text != "F-2") {
        throw UsageError("catalog only tabulates Z = F-2");
    }
    const SearchConfig cfg = search_config(o, "1s");
    int code = kOk;
    for (std::size_t f = f_lo; f <= f_hi; ++f) {
        for (std::size_t s = o.s_min; s <= o.s_max; ++s) {
            const auto conj = conjectured_k_fz2(static_cast<std::int64_t>(f), static_cast<std::int64_t>(s));
            json row{{"f", f}, {"s", s}, {"k_formula", conj.value}, {"certified", conj.certified}};
            if (!o.no_search) {
                const auto outcome = max_k(f, f - 2, s, cfg);
                if (outcome.exhausted) {
                    const bool agree = outcome.optimum == conj.value;
                    row["k_search"] = outcome.optimum;
                    row["agree"] = agree;
                    if (!agree) {
                        code = kInvalid;
                    }
                }
            }
            out << row.dump() << '\n';
        }
    }
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Placement delivery array toolkit", "pda"};
    app.require_subcommand(1);
    Options o;

    // construct
    auto* construct = app.add_subcommand("construct", "Build a PDA family member");
    construct->require_subcommand(1);
    auto* c_mn = construct->add_subcommand("mn", "Subset PDA (C(F,Z), F, Z, C(F,Z+1))");
    c_mn->add_option("--f", o.f, "rows F")->required();
    c_mn->add_option("--z", o.z, "stars per column Z")->required();
    auto* c_opt = construct->add_subcommand("opt2", "Extremal Z = F-2 construction");
    c_opt->add_option("--f", o.f)->required();
    c_opt->add_option("--s", o.s)->required();
    auto* c_f2 = construct->add_subcommand("f2", "Starless two-row PDA");
    c_f2->add_option("--s", o.s)->required();
    for (auto* sub : {c_mn, c_opt, c_f2}) {
        sub->add_option("--out", o.out_path, "write .pda here instead of stdout");
        sub->add_flag("--recipe", o.recipe, "print the construction recipe as JSON");
    }

    // verify
    auto* ver = app.add_subcommand("verify", "Check the PDA properties");
    ver->add_option("file", o.input, "path or - for stdin");
    ver->add_option("--z", o.expect_z, "required stars per column (int or f-N)");
    ver->add_flag("--structural", o.structural, "also run the Z = F-2 structural lemma checks");

    // transform
    auto* tr = app.add_subcommand("transform", "Structure-preserving transforms");
    tr->require_subcommand(1);
    auto* t_perm = tr->add_subcommand("permute", "Relabel rows, columns and symbols");
    t_perm->add_option("--rows", o.row_perm, "row images, comma separated");
    t_perm->add_option("--cols", o.col_perm, "column images");
    t_perm->add_option("--symbols", o.sym_perm, "symbol images");
    auto* t_tr = tr->add_subcommand("transpose", "Swap rows and columns");
    auto* t_dual = tr->add_subcommand("dual", "Swap rows and symbols");
    auto* t_role = tr->add_subcommand("role", "Arbitrary role permutation");
    t_role->add_option("--order", o.roles, "output rows,columns,symbols taken from these input roles")
        ->required();
    auto* t_cat = tr->add_subcommand("concat", "Juxtapose two PDAs");
    auto* t_rep = tr->add_subcommand("replicate", "m disjoint copies");
    t_rep->add_option("--m", o.m)->required();
    auto* t_sub = tr->add_subcommand("subgrid", "Induced subarray");
    t_sub->add_option("--rows", o.rows, "rows to keep (default all)");
    t_sub->add_option("--cols", o.cols, "columns to keep (default all)");
    t_sub->add_flag("--compact", o.compact, "renumber surviving symbols densely");
    for (auto* sub : {t_perm, t_tr, t_dual, t_role, t_cat, t_rep, t_sub}) {
        sub->add_option("file", o.input, "path or - for stdin");
        sub->add_option("--out", o.out_path);
    }
    t_cat->add_option("second", o.input2, "grid placed to the right")->required();

    // bound
    auto* bound = app.add_subcommand("bound", "Evaluate bounds");
    bound->add_option("--f", o.f)->required();
    bound->add_option("--z", o.z_text, "int or f-N")->required();
    bound->add_option("--k", o.bound_k);
    bound->add_option("--s", o.bound_s);
    bound->add_option("--refute", o.refute, "candidate K to test against the Z = F-2 necessary condition");

    // search
    auto* search = app.add_subcommand("search", "Exhaustive extremal search");
    search->require_subcommand(1);
    auto* s_maxk = search->add_subcommand("maxk", "Maximum K for (F, Z, S)");
    s_maxk->add_option("--f", o.f)->required();
    s_maxk->add_option("--z", o.z_text)->required();
    s_maxk->add_option("--s", o.s)->required();
    auto* s_mins = search->add_subcommand("mins", "Minimum S for (K, F, Z)");
    s_mins->add_option("--k", o.k)->required();
    s_mins->add_option("--f", o.f)->required();
    s_mins->add_option("--z", o.z_text)->required();
    for (auto* sub : {s_maxk, s_mins}) {
        sub->add_option("--budget", o.budget, "time budget, e.g. 60s, 500ms, 2m");
        sub->add_option("--nodes", o.node_budget, "node budget");
        sub->add_option("--threads", o.threads, "worker threads (0 = sequential)");
        sub->add_flag("--no-prune", o.no_prune, "do not use theorem-backed bounds to skip targets");
        sub->add_option("--out", o.out_path, "write witness .pda here");
    }

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run the induced coded caching scheme");
    sim->add_option("--pda", o.pda_path, "path or -")->required();
    sim->add_option("--files", o.files, "library size N")->required();
    sim->add_option("--demands", o.demands, "file index per user, comma separated");
    sim->add_option("--seed", o.seed);
    sim->add_option("--subfile-bytes", o.subfile_bytes);
    sim->add_flag("--all-demands", o.all_demands, "every demand vector in [0,N)^K");

    // decompose
    auto* dec = app.add_subcommand("decompose", "Split off a subset-PDA block");
    dec->add_option("file", o.input, "path or -");
    dec->add_option("--budget", o.budget);
    dec->add_option("--block-out", o.block_out);
    dec->add_option("--remainder-out", o.rest_out);

    // catalog
    auto* cat = app.add_subcommand("catalog", "Tabulate extremal K for Z = F-2");
    cat->add_option("--z", o.z_text, "only f-2 is supported");
    cat->add_option("--f", o.f_range, "range such as 2..6");
    cat->add_option("--s-min", o.s_min);
    cat->add_option("--s-max", o.s_max);
    cat->add_option("--budget", o.budget, "per-cell search budget");
    cat->add_option("--threads", o.threads);
    cat->add_flag("--no-prune", o.no_prune);
    cat->add_flag("--no-search", o.no_search, "formula and certification only");

    std::vector<std::string> argv_store{"pda"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (construct->parsed()) {
            Grid g;
            std::optional<Recipe> recipe;
            if (c_mn->parsed()) {
                g = mn_pda(o.f, o.z);
                recipe = Recipe{Recipe::Kind::mn,
                                {{"f", static_cast<std::int64_t>(o.f)}, {"z", static_cast<std::int64_t>(o.z)}},
                                {}};
            } else if (c_opt->parsed()) {
                auto built = optimal_fz2(o.f, o.s);
                g = std::move(built.grid);
                recipe = std::move(built.recipe);
            } else {
                g = f2_base(o.s);
                recipe = Recipe{Recipe::Kind::f2_base, {{"s", static_cast<std::int64_t>(o.s)}}, {}};
            }
            if (o.recipe) {
                out << recipe->to_json().dump() << '\n';
                if (!o.out_path.empty()) {
                    emit(g, o.out_path, out);
                }
            } else {
                emit(g, o.out_path, out);
            }
            return kOk;
        }
        if (ver->parsed()) {
            return cmd_verify(o, in, out);
        }
        if (tr->parsed()) {
            const Grid g = load(o.input, in);
            Grid result;
            if (t_perm->parsed()) {
                result = permute(g, perm_or_identity(o.row_perm, g.rows()), perm_or_identity(o.col_perm, g.cols()),
                                 perm_or_identity(o.sym_perm, g.s_bound()));
            } else if (t_tr->parsed()) {
                result = transpose(g);
            } else if (t_dual->parsed()) {
                result = symbol_dual(g);
            } else if (t_role->parsed()) {
                std::vector<std::string> names;
                std::stringstream ss(o.roles);
                for (std::string tok; std::getline(ss, tok, ',');) {
                    names.push_back(tok);
                }
                if (names.size() != 3) {
                    throw UsageError("--order needs three roles");
                }
                result = role_permute(g, {parse_role(names[0]), parse_role(names[1]), parse_role(names[2])});
            } else if (t_cat->parsed()) {
                result = concat(g, load(o.input2, in));
            } else if (t_rep->parsed()) {
                result = replicate(g, o.m);
            } else {
                result = subgrid(g, perm_or_identity(o.rows, g.rows()), perm_or_identity(o.cols, g.cols()),
                                 o.compact);
            }
            emit(result, o.out_path, out);
            return kOk;
        }
        if (bound->parsed()) {
            return cmd_bound(o, out);
        }
        if (search->parsed()) {
            const SearchConfig cfg = search_config(o, "60s");
            SearchOutcome outcome;
            if (s_maxk->parsed()) {
                outcome = max_k(o.f, parse_z(o.z_text, o.f), o.s, cfg);
            } else {
                outcome = min_s(o.k, o.f, parse_z(o.z_text, o.f), cfg);
            }
            out << outcome.to_json().dump() << '\n';
            if (!o.out_path.empty()) {
                emit(outcome.witness, o.out_path, out);
            }
            return kOk;
        }
        if (sim->parsed()) {
            return cmd_simulate(o, in, out);
        }
        if (dec->parsed()) {
            return cmd_decompose(o, in, out);
        }
        if (cat->parsed()) {
            return cmd_catalog(o, out);
        }
    } catch (const ParseError& e) {
        err << "pda: " << e.what() << '\n';
        return kInvalid;
    } catch (const UsageError& e) {
        err << "pda: " << e.what() << '\n';
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace pda::cli
