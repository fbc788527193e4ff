#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jeq/canonical.hpp"
#include "jeq/classify.hpp"
#include "jeq/construct.hpp"
#include "jeq/eigenfn.hpp"
#include "jeq/error.hpp"
#include "jeq/localstruct.hpp"
#include "jeq/partition_io.hpp"
#include "jeq/search.hpp"

namespace jeq::cli {

namespace {

using nlohmann::json;

json rational_json(const Rational& r) {
    if (is_integer(r)) return numerator(r).convert_to<long long>();
    return to_string(r);
}

json quotient_json(const QuotientMatrix& q) {
    json rows = json::array();
    for (int i = 0; i < q.q; ++i) {
        json row = json::array();
        for (int j = 0; j < q.q; ++j) row.push_back(rational_json(q(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json matrix_json(const Matrix2& m) { return {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}; }

json signature_json(const DependenceSignature& s) {
    json j = json::object();
    if (s.bipartition) j["bipartition"] = {s.bipartition->first, s.bipartition->second};
    if (!s.matching.empty()) {
        json m = json::array();
        for (auto [x, y] : s.matching) m.push_back({x, y});
        j["matching"] = m;
    }
    return j;
}

json recognition_json(const RecognitionResult& r) {
    json j = {{"family", r.family_name()}, {"certified", r.certified}};
    j["structure"] = r.structure ? signature_json(*r.structure) : json(nullptr);
    return j;
}

void emit(std::ostream& out, json j) {
    json doc = {{"schema", 1}};
    doc.update(j);
    out << doc.dump(2) << "\n";
}

Matrix2 parse_matrix(const std::string& text) {
    Matrix2 m{};
    std::istringstream in(text);
    char sep = 0;
    if (!(in >> m[0][0] >> sep) || sep != ',' || !(in >> m[0][1] >> sep) || sep != ';' || !(in >> m[1][0] >> sep) || sep != ',' ||
        !(in >> m[1][1]) || !(in >> std::ws).eof())
        throw DomainError("matrix must look like \"9,6;8,7\", got \"" + text + "\"");
    return m;
}

// Input problems (unreadable or invalid partitions) are usage errors.
struct InputError : Error {
    using Error::Error;
};

TwoPartition load(const std::string& path) {
    try {
        return read_partition_file(path);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

struct Options {
    // construct
    std::string family;
    std::string pairs;
    int m = 0;
    std::string out_path;
    std::string format = "text";
    // verify / analyze / nbarray / classify
    std::string partition_path;
    std::string report = "supports";
    std::string vertex;
    bool all = false;
    bool summary = false;
    // search / report
    int n = 0;
    std::string theta = "auto";
    std::string matrix;
    std::string symmetry = "none";
    double budget_nodes = 0;
    double budget_seconds = 0;
    int threads = 0;
    bool no_prune = false;
    bool no_spectral = false;
};

int cmd_construct(const Options& o, std::ostream& out) {
    if (o.pairs.empty() == (o.m == 0)) throw InputError("construct needs exactly one of --pairs or --m");
    const auto pb = [&] {
        try {
            return o.pairs.empty() ? PairedBipartition::standard(o.m) : PairedBipartition::parse(o.pairs);
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
    }();
    if (pb.n() < 6 || pb.n() > 20) throw InputError("construct supports even n in 6..20, got n=" + std::to_string(pb.n()));
    if (o.family == "three") {
        const auto tp = three_partition(pb);
        const auto check = is_equitable(tp);
        emit(out, {{"n", pb.n()},
                   {"pairs", pb.to_string()},
                   {"cell_sizes", {tp.cell_size(1), tp.cell_size(2), tp.cell_size(3)}},
                   {"equitable", check.equitable},
                   {"quotient", quotient_json(check.quotient)}});
        return kOk;
    }
    const auto fam = parse_family(o.family);
    if (!fam) throw InputError("unknown family '" + o.family + "' (pi1, pi2, pi3, three)");
    const auto p = pi(*fam, pb);
    if (o.format != "text" && o.format != "json") throw InputError("--format must be text or json");
    const std::string body = o.format == "json" ? to_json(p) : to_text(p);
    if (o.out_path.empty()) {
        out << body;
    } else {
        write_file(o.out_path, body);
        emit(out, {{"n", p.n()},
                   {"family", to_string(*fam)},
                   {"quotient", quotient_json(p.quotient())},
                   {"merged_cell", p.flipped() ? 2 : 1},
                   {"out", o.out_path}});
    }
    return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const auto p = load(o.partition_path);
    const auto check = is_equitable(p);
    json j = {{"n", p.n()},
              {"equitable", check.equitable},
              {"quotient", quotient_json(check.quotient)},
              {"cell_sizes", {p.cell_size(1), p.cell_size(2)}}};
    if (check.equitable) {
        const auto theta = theta_of(check.quotient);
        j["theta"] = rational_json(theta);
        j["symmetric"] = check.quotient(0, 0) == check.quotient(1, 1);
    } else if (check.witness) {
        json req = json::array();
        for (const auto& r : check.witness->required) req.push_back(rational_json(r));
        j["witness"] = {{"vertex", check.witness->vertex.to_string()},
                        {"cell", check.witness->cell},
                        {"observed", check.witness->observed},
                        {"required", req}};
    }
    emit(out, j);
    return check.equitable ? kOk : kCheckFailed;
}

int cmd_analyze(const Options& o, std::ostream& out) {
    const auto p = load(o.partition_path);
    if (o.report == "supports") {
        const auto r = supports_identity(p);
        emit(out, {{"t1", r.t1}, {"t2", r.t2}, {"t0", r.t0}, {"lhs", rational_json(r.lhs)}, {"rhs", rational_json(r.rhs)}, {"holds", r.holds}});
        return r.holds ? kOk : kCheckFailed;
    }
    if (o.report == "identities") {
        const int n = p.n();
        const auto params = local_params(p);
        std::int64_t checked[3] = {0, 0, 0}, failed[3] = {0, 0, 0};
        for (int r = 0; r < p.graph().order(); ++r) {
            ++checked[0];
            failed[0] += !local_identity_check(p, p.graph().vertex(r), params);
        }
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (int c = 1; c <= n; ++c)
                    for (int d = 1; d <= n; ++d) {
                        if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
                        ++checked[1];
                        failed[1] += !pair_difference_identity(p, a, b, c, d, params.theta);
                        for (int e = 1; e <= n; ++e) {
                            if (e == a || e == b || e == c || e == d) continue;
                            ++checked[2];
                            failed[2] += !five_term_identity(p, a, b, c, d, e, params.theta);
                        }
                    }
        json j;
        const char* names[3] = {"vertex", "pair_difference", "five_term"};
        for (int i = 0; i < 3; ++i) j[names[i]] = {{"checked", checked[i]}, {"failed", failed[i]}};
        emit(out, j);
        return failed[0] + failed[1] + failed[2] == 0 ? kOk : kCheckFailed;
    }
    if (o.report == "differences") {
        const auto f = partition_function(p);
        json list = json::array();
        bool ok = true;
        for (int a = 1; a <= p.n(); ++a)
            for (int b = a + 1; b <= p.n(); ++b) {
                json e = {{"pair", {a, b}}};
                try {
                    e["type"] = classify_lambda1(partial_difference(f, a, b)).to_string();
                } catch (const Error& ex) {
                    e["type"] = "error";
                    e["error"] = ex.what();
                    ok = false;
                }
                list.push_back(e);
            }
        emit(out, {{"differences", list}});
        return ok ? kOk : kCheckFailed;
    }
    throw InputError("unknown report '" + o.report + "' (supports, identities, differences)");
}

int cmd_nbarray(const Options& o, std::ostream& out) {
    const auto p = load(o.partition_path);
    if (o.all == !o.vertex.empty()) throw InputError("nbarray needs exactly one of --vertex or --all");
    auto describe = [&](const Triple& t) {
        const auto arr = nb_array(p, t);
        std::string s = arr.to_string();
        if (arr.base_indicator == 1) {
            const auto prof = case_profile(arr, p.n());
            s += "tuple: (" + std::to_string(prof.tuple.d1) + "," + std::to_string(prof.tuple.d2) + ")" +
                 (prof.tuple.doubled ? " doubled" : "") + " case: " + to_string(prof.id) + "\n";
        } else {
            s += "cell 2\n";
        }
        return s;
    };
    if (!o.all) {
        Triple t;
        try {
            t = Triple::parse(o.vertex);
        } catch (const Error& e) {
            throw InputError(e.what());
        }
        if (t.arity() != 3 || t.max() > p.n()) throw InputError("vertex " + o.vertex + " is not in J(" + std::to_string(p.n()) + ",3)");
        out << describe(t);
        return kOk;
    }
    if (!o.summary) {
        for (int r = 0; r < p.graph().order(); ++r) {
            if (!p.in_cell1(r)) continue;
            out << "vertex " << p.graph().vertex(r).to_string() << "\n" << describe(p.graph().vertex(r));
        }
        return kOk;
    }
    std::map<std::string, int> hist;
    std::map<int, int> ones;
    for (int r = 0; r < p.graph().order(); ++r) {
        if (!p.in_cell1(r)) continue;
        const auto arr = nb_array(p, p.graph().vertex(r));
        ++hist[to_string(case_profile(arr, p.n()).id)];
        ++ones[arr.ones()];
    }
    json h = json::object();
    for (const auto& [k, v] : hist) h[k] = v;
    json c = json::object();
    for (const auto& [k, v] : ones) c[std::to_string(k)] = v;
    emit(out, {{"n", p.n()}, {"cell1_vertices", p.cell_size(1)}, {"cases", h}, {"cell1_neighbours", c}});
    return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
    const auto p = load(o.partition_path);
    const auto r = recognize(p);
    json j = recognition_json(r);
    json fams = json::array();
    for (Family f : quotient_family(p.quotient(), p.n())) fams.push_back(to_string(f));
    j["matrix_families"] = fams;
    emit(out, j);
    return r.certified ? kOk : kCheckFailed;
}

SearchLimits limits_of(const Options& o) {
    if (o.budget_nodes < 0 || o.budget_seconds < 0) throw InputError("budgets must be non-negative");
    SearchLimits l;
    l.max_nodes = static_cast<std::uint64_t>(o.budget_nodes);
    l.max_seconds = o.budget_seconds;
    return l;
}

SymmetryMode symmetry_of(const Options& o) {
    const auto s = parse_symmetry(o.symmetry);
    if (!s) throw InputError("--symmetry must be none, dedup or canonical");
    return *s;
}

json search_json(const SearchReport& r) {
    std::map<std::string, int> fams;
    for (const auto& s : r.solutions) fams[s.recognition ? s.recognition->family_name() : "unrecognized"]++;
    return {{"n", r.n},
            {"matrix", matrix_json(r.q)},
            {"symmetry", to_string(r.symmetry)},
            {"complete", r.complete},
            {"solutions", r.solutions.size()},
            {"raw_solutions", r.raw_solutions},
            {"families", fams},
            {"nodes", r.nodes},
            {"local_prunes", r.local_prunes},
            {"size_prunes", r.size_prunes},
            {"spectral_prunes", r.spectral_prunes},
            {"forced", r.forced},
            {"frontier", r.frontier.size()},
            {"seconds", r.seconds}};
}

int cmd_search(const Options& o, std::ostream& out) {
    if (o.n < 6 || o.n > 14) throw InputError("search supports n in 6..14");
    std::vector<Matrix2> matrices;
    if (!o.matrix.empty()) {
        try {
            matrices.push_back(parse_matrix(o.matrix));
        } catch (const Error& e) {
            throw InputError(e.what());
        }
    } else {
        int theta = o.n - 7;
        if (o.theta != "auto") {
            try {
                theta = std::stoi(o.theta);
            } catch (const std::exception&) {
                throw InputError("--theta must be an integer or 'auto'");
            }
        }
        try {
            matrices = candidate_matrices(o.n, theta);
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
    }
    if (!o.out_path.empty() && matrices.size() != 1) throw InputError("--out needs a single --matrix");
    json reports = json::array();
    bool complete = true;
    for (const auto& q : matrices) {
        SearchProblem prob;
        prob.n = o.n;
        prob.q = q;
        prob.symmetry = symmetry_of(o);
        prob.limits = limits_of(o);
        prob.threads = o.threads;
        prob.prune = !o.no_prune;
        prob.spectral = !o.no_spectral;
        try {
            prob.validate();
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
        SearchReport rep;
        try {
            rep = enumerate(prob);
        } catch (const BudgetExhausted& e) {
            rep = e.partial();
            complete = false;
        }
        if (!o.out_path.empty()) {
            std::vector<TwoPartition> ps;
            for (const auto& s : rep.solutions) ps.push_back(s.partition);
            write_file(o.out_path, ps.empty() ? "n=" + std::to_string(o.n) + " w=3\n" : to_text(ps));
        }
        reports.push_back(search_json(rep));
    }
    emit(out, {{"reports", reports}, {"complete", complete}});
    return complete ? kOk : kCheckFailed;
}

int cmd_report(const Options& o, std::ostream& out) {
    if (o.n % 2 != 0 || o.n < 8 || o.n > 14) throw InputError("report supports even n in 8..14");
    const auto rep = verify_classification(o.n, symmetry_of(o), limits_of(o), o.threads);
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"matrix", matrix_json(e.q)},
                           {"complete", e.complete},
                           {"solutions", e.solutions},
                           {"Pi1", e.pi1},
                           {"Pi2", e.pi2},
                           {"Pi3", e.pi3},
                           {"uncertified", e.uncertified.size()},
                           {"nodes", e.nodes},
                           {"seconds", e.seconds}});
    emit(out, {{"n", rep.n},
               {"symmetry", to_string(rep.symmetry)},
               {"complete", rep.complete},
               {"uncertified", rep.uncertified()},
               {"entries", entries}});
    return rep.complete && rep.uncertified() == 0 ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equitable 2-partitions of Johnson graphs J(n,3)", "jeq"};
    app.require_subcommand(1);
    Options o;
    auto partition_input = [&o](CLI::App* sub) {
        auto* group = sub->add_option_group("input");
        group->add_option("file", o.partition_path, "Partition file");
        group->add_option("--partition", o.partition_path, "Partition file (same as the positional)");
        group->require_option(1);
    };

    auto* construct = app.add_subcommand("construct", "Build a Π1/Π2/Π3 instance or the 3-partition");
    construct->add_option("--family", o.family, "pi1, pi2, pi3 or three")->required();
    construct->add_option("--pairs", o.pairs, "Matched pairs u:w, e.g. \"1:5,2:6,3:7,4:8\"");
    construct->add_option("--m", o.m, "Use U={1..m}, W={m+1..2m}, u_i:w_i = i:m+i");
    construct->add_option("--out", o.out_path, "Write the partition here instead of stdout");
    construct->add_option("--format", o.format, "text or json");

    auto* verify = app.add_subcommand("verify", "Check that a partition file is equitable");
    partition_input(verify);

    auto* analyze = app.add_subcommand("analyze", "Eigenfunction and local-identity reports");
    partition_input(analyze);
    analyze->add_option("--report", o.report, "supports, identities or differences");

    auto* nbarray = app.add_subcommand("nbarray", "Neighbourhood arrays and case profiles");
    partition_input(nbarray);
    nbarray->add_option("--vertex", o.vertex, "Vertex as a,b,c");
    nbarray->add_flag("--all", o.all, "Every cell-1 vertex");
    nbarray->add_flag("--summary", o.summary, "With --all: histogram of case profiles");

    auto* classify = app.add_subcommand("classify", "Recognise a partition as a Π1/Π2/Π3 instance");
    partition_input(classify);

    auto* search = app.add_subcommand("search", "Enumerate equitable partitions with a given quotient matrix");
    search->add_option("--n", o.n, "Ground set size")->required();
    search->add_option("--theta", o.theta, "Eigenvalue for the candidate sweep, or 'auto' (n-7)");
    search->add_option("--matrix", o.matrix, "Quotient matrix \"b11,b12;b21,b22\"");
    search->add_option("--symmetry", o.symmetry, "none, dedup or canonical");
    search->add_option("--budget-nodes", o.budget_nodes, "Node budget (0 = none)");
    search->add_option("--budget-seconds", o.budget_seconds, "Time budget in seconds (0 = none)");
    search->add_option("--threads", o.threads, "Worker threads (0 = all cores, capped by JE_THREADS)");
    search->add_flag("--no-prune", o.no_prune, "Plain enumeration (tiny n only)");
    search->add_flag("--no-spectral", o.no_spectral, "Propagate vertex counts and cell size only");
    search->add_option("--out", o.out_path, "Write solutions in partition file format");

    auto* report = app.add_subcommand("report", "Search every non-symmetric matrix at θ = n-7 and tally families");
    report->add_option("--n", o.n, "Ground set size")->required();
    report->add_option("--symmetry", o.symmetry, "none, dedup or canonical");
    report->add_option("--budget-nodes", o.budget_nodes, "Node budget per matrix (0 = none)");
    report->add_option("--budget-seconds", o.budget_seconds, "Time budget per matrix (0 = none)");
    report->add_option("--threads", o.threads, "Worker threads");
    o.symmetry = "none";

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (construct->parsed()) return cmd_construct(o, out);
        if (verify->parsed()) return cmd_verify(o, out);
        if (analyze->parsed()) return cmd_analyze(o, out);
        if (nbarray->parsed()) return cmd_nbarray(o, out);
        if (classify->parsed()) return cmd_classify(o, out);
        if (search->parsed()) return cmd_search(o, out);
        if (report->parsed()) {
            if (report->count("--symmetry") == 0) o.symmetry = "canonical";
            return cmd_report(o, out);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kUsage;
}

}  // namespace jeq::cli
