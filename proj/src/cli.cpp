#include "hacert/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include "CLI11.hpp"

#include "hacert/io.hpp"
#include "hacert/snf_oracle.hpp"
#include "hacert/subdirect.hpp"

namespace hacert::cli {

using io::Json;

namespace {

struct Options {
    std::string ring_file, out_file;
    std::uint64_t budget = 0;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    std::optional<std::size_t> q;
    std::string a_file, b_file, sub_file, vector_file, matrix_file, module_file, target_file;
    std::vector<std::string> instance_files;
    std::size_t index = 1, length = 3;
    bool shear = false;
};

struct Report {
    Json body;
    int code = kOk;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RingPtr load_ring(const Options& o, bool integers_by_default = false) {
    if (o.ring_file.empty()) {
        if (integers_by_default) return RingDescriptor::integers();
        throw UsageError("--ring is required");
    }
    return io::parse_ring(io::load(o.ring_file));
}

const std::string& need(const std::string& path, const char* flag) {
    if (path.empty()) throw UsageError(std::string(flag) + " is required");
    return path;
}

FPModule load_module(const std::string& path, const RingPtr& ring) {
    const io::Source src = io::load(path);
    return io::parse_module(src, src.value, ring);
}

PolyMatrix load_submodule(const std::string& path, const RingPtr& ring, std::optional<std::size_t> rank) {
    const io::Source src = io::load(path);
    return io::parse_submodule(src, src.value, ring, rank);
}

SubdirectInstance load_instance(const Options& o, const RingPtr& ring) {
    const PolyMatrix a = load_submodule(need(o.a_file, "--A"), ring, o.q);
    const PolyMatrix b = load_submodule(need(o.b_file, "--B"), ring, o.q ? o.q : std::optional(a.rows()));
    return SubdirectInstance::make(a, b);
}

// Batch instance file: {"ring": {...}, "q": n, "A": submodule, "B": submodule}; "ring" may be omitted when --ring is given.
SubdirectInstance load_instance_file(const std::string& path, const RingPtr& fallback) {
    const io::Source src = io::load(path);
    if (!src.value.is_object()) src.fail("", "instance file must be an object");
    RingPtr ring = fallback;
    if (auto it = src.value.find("ring"); it != src.value.end()) ring = io::parse_ring(src, *it);
    if (!ring) src.fail("", "no ring: give --ring or a \"ring\" key");
    std::optional<std::size_t> q;
    if (auto it = src.value.find("q"); it != src.value.end()) {
        if (!it->is_number_unsigned()) src.fail("\"q\"", "q must be a nonnegative integer");
        q = it->get<std::size_t>();
    }
    if (!src.value.contains("A")) src.fail("", "missing key \"A\"");
    if (!src.value.contains("B")) src.fail("", "missing key \"B\"");
    const PolyMatrix a = io::parse_submodule(src, src.value["A"], ring, q);
    const PolyMatrix b = io::parse_submodule(src, src.value["B"], ring, a.rows());
    return SubdirectInstance::make(a, b);
}

std::string free_remark(const Certificate& c, const RingPtr& ring) {
    if (!c.projective) return "the torsion-free factor is not projective";
    const std::string r = std::to_string(c.rank);
    if (ring->is_integers()) return "the torsion-free factor is projective of rank " + r + ", hence free over Z";
    return "the torsion-free factor is projective of rank " + r +
           ", hence stably free; over a polynomial ring over a field it is free, no free basis is constructed";
}

Json certificate_json(const SubdirectInstance& inst, const Certificate& c, std::uint64_t budget) {
    Json j;
    j["q"] = inst.q;
    j["failure_reason"] = to_string(c.failure_reason);
    j["hypothesis_met"] = c.hypothesis_met;
    if (c.failure_reason == FailureReason::BudgetExceeded) {
        j["budget"] = budget;
        return j;
    }
    j["regular"] = c.regular;
    j["regular_interconnection"] = c.regular;
    j["interconnection_module"] = io::module_json(c.T);
    j["grade_T"] = io::grade_json(c.gradeT);
    j["autonomy_degree"] = io::grade_json(c.gradeT);
    j["torsion_preimage"] = io::submodule_json(c.torsion_preimage);
    j["tf_factor"] = io::module_json(c.tf_factor);
    j["largest_controllable_subbehavior"] = io::module_json(c.tf_factor);
    j["projective"] = c.projective;
    j["rank"] = c.rank;
    j["section"] = c.section ? io::to_json(c.section->matrix()) : Json(nullptr);
    j["section_verified"] = c.section_verified;
    j["stably_free"] = c.stably_free_note;
    j["free_remark"] = free_remark(c, inst.ring);
    if (c.hypothesis_met) {
        j["checks"] = Json{{"torsion_meets_b_trivially", c.torsion_meets_b_trivially},
                           {"torsion_meets_sum_in_a", c.torsion_meets_sum_in_a},
                           {"quotient_grade_two", c.quotient_grade_two}};
    }
    return j;
}

int certificate_code(const Certificate& c) {
    if (c.failure_reason == FailureReason::BudgetExceeded) return kInputError;
    return c.hypothesis_met && c.projective && c.section_verified ? kOk : kHypothesisFails;
}

Report cmd_gb(const Options& o) {
    const RingPtr ring = load_ring(o);
    const Submodule s(load_submodule(need(o.sub_file, "--sub"), ring, o.q));
    return {Json{{"basis", io::submodule_json(s)}, {"size", s.basis().size()}}};
}

Report cmd_nf(const Options& o) {
    const RingPtr ring = load_ring(o);
    const Submodule s(load_submodule(need(o.sub_file, "--sub"), ring, o.q));
    const io::Source vs = io::load(need(o.vector_file, "--vector"));
    const FreeVector v = io::parse_vector(vs, vs.value, ring);
    if (v.size() != s.rank()) vs.fail("", "vector length does not match the submodule rank");
    return {Json{{"normal_form", io::to_json(s.reduce(v))}, {"member", s.contains(v)}}};
}

Report cmd_syz(const Options& o) {
    const RingPtr ring = load_ring(o);
    const io::Source src = io::load(need(o.matrix_file, "--matrix"));
    return {Json{{"syzygies", io::to_json(syzygies(io::parse_matrix(src, src.value, ring)))}}};
}

Report cmd_intersect(const Options& o) {
    const RingPtr ring = load_ring(o);
    const SubdirectInstance inst = load_instance(o, ring);
    return {Json{{"intersection", io::submodule_json(intersect(inst.A, inst.B))}}};
}

Report cmd_resolve(const Options& o) {
    const RingPtr ring = load_ring(o);
    const ResolutionComplex res = free_resolution(load_module(need(o.module_file, "--module"), ring), o.length);
    Json diffs = Json::array();
    for (const auto& d : res.differentials) diffs.push_back(io::to_json(d));
    return {Json{{"ranks", res.ranks}, {"differentials", diffs}, {"complete", res.complete}, {"exact", res.verify()}}};
}

Report cmd_ext(const Options& o) {
    const RingPtr ring = load_ring(o);
    const FPModule m = load_module(need(o.module_file, "--module"), ring);
    const FPModule n = o.target_file.empty() ? FPModule::free(ring, 1) : load_module(o.target_file, ring);
    const FPModule e = ext(o.index, m, n);
    return {Json{{"index", o.index}, {"ext", io::module_json(e)}, {"zero", e.is_zero()}}};
}

Report cmd_grade(const Options& o) {
    const RingPtr ring = load_ring(o);
    const GradeValue g = grade(load_module(need(o.module_file, "--module"), ring));
    return {Json{{"grade", io::grade_json(g)}, {"autonomy_degree", io::grade_json(g)}}};
}

Report cmd_codim(const Options& o) {
    const RingPtr ring = load_ring(o);
    if (ring->is_integers()) throw UsageError("codim needs a polynomial ring");
    return {Json{{"codimension", io::grade_json(codimension(load_module(need(o.module_file, "--module"), ring)))}}};
}

Report cmd_annihilator(const Options& o) {
    const RingPtr ring = load_ring(o);
    return {Json{{"annihilator", io::submodule_json(annihilator(load_module(need(o.module_file, "--module"), ring)))}}};
}

Report cmd_auslander(const Options& o) {
    const RingPtr ring = load_ring(o);
    return {Json{{"auslander_dual", io::module_json(auslander_dual(load_module(need(o.module_file, "--module"), ring)))}}};
}

Report cmd_torsion(const Options& o) {
    const RingPtr ring = load_ring(o);
    const Torsion t = torsion_submodule(load_module(need(o.module_file, "--module"), ring));
    const FPModule& tor = t.inclusion.source();
    return {Json{{"torsion", io::module_json(tor)},
                 {"inclusion", io::to_json(t.inclusion.matrix())},
                 {"torsion_preimage", io::submodule_json(t.preimage)},
                 {"torsion_free", tor.is_zero()}}};
}

Report cmd_tf_factor(const Options& o) {
    const RingPtr ring = load_ring(o);
    const Morphism p = torsionfree_factor(load_module(need(o.module_file, "--module"), ring));
    return {Json{{"factor", io::module_json(p.target())},
                 {"largest_controllable_subbehavior", io::module_json(p.target())},
                 {"projection", io::to_json(p.matrix())}}};
}

Report cmd_embed(const Options& o) {
    const RingPtr ring = load_ring(o);
    try {
        const Morphism e = free_embedding(load_module(need(o.module_file, "--module"), ring));
        return {Json{{"torsion_free", true},
                     {"rank", e.target().generators()},
                     {"matrix", io::to_json(e.matrix())},
                     {"mono", is_mono(e)}}};
    } catch (const NotTorsionFree& e) {
        return {Json{{"torsion_free", false}, {"torsion_preimage", io::submodule_json(e.witness())}}, kHypothesisFails};
    }
}

Report cmd_split(const Options& o) {
    const RingPtr ring = load_ring(o);
    const FPModule m = load_module(need(o.module_file, "--module"), ring);
    const Morphism pi = Morphism::make(FPModule::free(ring, m.generators()), m, PolyMatrix::identity(ring, m.generators()));
    const auto s = split_surjection(pi);
    const bool verified = s && s->then(pi).equals(Morphism::identity(m));
    return {Json{{"splits", s.has_value()},
                 {"section", s ? io::to_json(s->matrix()) : Json(nullptr)},
                 {"section_verified", verified}},
            verified ? kOk : kHypothesisFails};
}

Report cmd_complement(const Options& o) {
    const RingPtr ring = load_ring(o);
    const SubdirectInstance inst = load_instance(o, ring);
    if (!check_regular(inst))
        return {Json{{"regular", false}, {"complement", nullptr}, {"failure_reason", "not_regular"}}, kHypothesisFails};
    const ComplementResult r = complement_above(inst);
    Json j{{"regular", true},
           {"ext_witness", io::module_json(r.ext_witness)},
           {"complement", r.complement ? io::submodule_json(*r.complement) : Json(nullptr)}};
    if (!r.complement) return {j, kHypothesisFails};
    j["checks"] = Json{{"contains_b", r.contains_b},
                       {"meets_a_trivially", r.meets_a_trivially},
                       {"spans_with_a", r.spans_with_a},
                       {"projection_isomorphic", r.projection_isomorphic}};
    const bool ok = r.contains_b && r.meets_a_trivially && r.spans_with_a && r.projection_isomorphic;
    return {j, ok ? kOk : kHypothesisFails};
}

Report certify_one(const SubdirectInstance& inst, const Options& o) {
    Certificate c = certify(inst, o.budget);
    return {certificate_json(inst, c, o.budget), certificate_code(c)};
}

Report cmd_certify(const Options& o) {
    if (o.instance_files.empty()) {
        const RingPtr ring = load_ring(o);
        SubdirectInstance inst = load_instance(o, ring);
        Json shear = nullptr;
        if (o.shear) {
            std::mt19937_64 rng(o.seed);
            const PolyMatrix g = random_shear(ring, inst.q, rng);
            inst = apply_shear(inst, g);
            shear = io::to_json(g);
        }
        Report r = certify_one(inst, o);
        if (o.shear) r.body["shear"] = shear;
        return r;
    }

    const RingPtr fallback = o.ring_file.empty() ? nullptr : load_ring(o);
    const std::size_t n = o.instance_files.size();
    std::vector<Report> results(n);
    std::size_t next = 0;
    std::mutex lock;
    auto worker = [&] {
        for (;;) {
            std::size_t k;
            {
                std::lock_guard<std::mutex> g(lock);
                if (next == n) return;
                k = next++;
            }
            try {
                results[k] = certify_one(load_instance_file(o.instance_files[k], fallback), o);
            } catch (const std::exception& e) {
                results[k] = {Json{{"error", e.what()}}, kInputError};
            }
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    Json list = Json::array();
    int code = kOk;
    std::size_t accepted = 0;
    for (std::size_t k = 0; k < n; ++k) {
        results[k].body["file"] = o.instance_files[k];
        list.push_back(results[k].body);
        code = std::max(code, results[k].code);
        if (results[k].code == kOk) ++accepted;
    }
    return {Json{{"certificates", list}, {"accepted", accepted}, {"total", n}}, code};
}

Report cmd_appendix(const Options& o) {
    const RingPtr ring = load_ring(o);
    const SubdirectInstance inst = load_instance(o, ring);
    const AppendixReport r = appendix_equivalence_check(inst);
    Json j{{"precondition", r.precondition}};
    if (r.precondition) {
        j["splits"] = r.splits;
        j["ext_vanishes"] = r.ext_vanishes;
        j["equivalent"] = r.equivalent();
        j["ext_witness"] = io::module_json(r.ext_witness);
        j["section"] = r.section ? io::to_json(r.section->matrix()) : Json(nullptr);
    }
    return {j, r.precondition && r.equivalent() ? kOk : kHypothesisFails};
}

Json integers_json(const std::vector<Integer>& v) {
    Json out = Json::array();
    for (const auto& d : v) out.push_back(d.get_str());
    return out;
}

Report cmd_oracle(const Options& o) {
    const RingPtr ring = load_ring(o, true);
    if (!ring->is_integers()) throw UsageError("oracle needs the ring {\"coeffs\":\"ZZ\"}");
    const OracleHomology h = oracle_homology(load_module(need(o.module_file, "--module"), ring));
    return {Json{{"free_rank", h.module.free_rank},
                 {"torsion", integers_json(h.torsion)},
                 {"dual_rank", h.dual_rank},
                 {"ext1", integers_json(h.ext1)},
                 {"grade", io::grade_json(h.grade)}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certificates for submodule pairs over polynomial rings and Z", "hacert"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--ring", o.ring_file, "ring descriptor file");
    app.add_option("--out", o.out_file, "write the report here instead of stdout");
    app.add_option("--budget", o.budget, "max S-pairs per basis computation (0 = unlimited)");
    app.add_option("--seed", o.seed, "seed for --shear");
    app.add_option("--jobs", o.jobs, "worker threads for batch certify")->check(CLI::PositiveNumber);

    std::map<std::string, std::function<Report(const Options&)>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, std::function<Report(const Options&)> fn) {
        handlers[name] = std::move(fn);
        return app.add_subcommand(name, help);
    };
    auto pair_opts = [&](CLI::App* c) {
        c->add_option("--q", o.q, "ambient rank");
        c->add_option("--A", o.a_file, "submodule file")->required();
        c->add_option("--B", o.b_file, "submodule file")->required();
    };
    auto module_opt = [&](CLI::App* c) { c->add_option("--module", o.module_file, "module file")->required(); };

    auto* gb = sub("gb", "reduced basis of a submodule", cmd_gb);
    gb->add_option("--sub", o.sub_file)->required();
    gb->add_option("--q", o.q);
    auto* nf = sub("nf", "normal form and membership", cmd_nf);
    nf->add_option("--sub", o.sub_file)->required();
    nf->add_option("--vector", o.vector_file)->required();
    nf->add_option("--q", o.q);
    sub("syz", "syzygies of the columns of a matrix", cmd_syz)->add_option("--matrix", o.matrix_file)->required();
    pair_opts(sub("intersect", "intersection of two submodules", cmd_intersect));
    auto* resolve = sub("resolve", "free resolution", cmd_resolve);
    module_opt(resolve);
    resolve->add_option("--length", o.length)->check(CLI::PositiveNumber);
    auto* ext_cmd = sub("ext", "Ext^i(M, N), N defaults to R", cmd_ext);
    module_opt(ext_cmd);
    ext_cmd->add_option("--index", o.index);
    ext_cmd->add_option("--target", o.target_file);
    module_opt(sub("grade", "grade (degree of autonomy)", cmd_grade));
    module_opt(sub("codim", "codimension of the support", cmd_codim));
    module_opt(sub("annihilator", "annihilator ideal", cmd_annihilator));
    module_opt(sub("auslander", "Auslander dual", cmd_auslander));
    module_opt(sub("torsion", "torsion submodule", cmd_torsion));
    module_opt(sub("tf-factor", "torsion-free factor", cmd_tf_factor));
    module_opt(sub("embed", "embedding into a free module", cmd_embed));
    module_opt(sub("split", "section of the free cover", cmd_split));
    pair_opts(sub("complement", "complement of A containing B", cmd_complement));
    auto* cert = sub("certify", "certify a pair A, B", cmd_certify);
    cert->add_option("--q", o.q);
    cert->add_option("--A", o.a_file);
    cert->add_option("--B", o.b_file);
    cert->add_option("--instances", o.instance_files, "batch instance files");
    cert->add_flag("--shear", o.shear, "apply a random unimodular change of basis first");
    pair_opts(sub("appendix-check", "splitting versus Ext^1(T, A) = 0", cmd_appendix));
    module_opt(sub("oracle", "Smith normal form invariants over Z", cmd_oracle));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "hacert: " << e.what() << "\n";
        return kInputError;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    Report report;
    try {
        ScopedBudget scope(o.budget);
        report = handlers.at(name)(o);
    } catch (const io::InputError& e) {
        err << e.what() << "\n";
        return kInputError;
    } catch (const BudgetExceeded& e) {
        err << "hacert: " << e.what() << "\n";
        return kInputError;
    } catch (const UsageError& e) {
        err << "hacert: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "hacert: " << e.what() << "\n";
        return kInputError;
    }

    const std::string text = io::dump(report.body);
    if (o.out_file.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out_file, std::ios::binary);
        if (!(f << text)) {
            err << "hacert: cannot write " << o.out_file << "\n";
            return kInputError;
        }
    }
    return report.code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace hacert::cli
