#include "hacert/subdirect.hpp"

namespace hacert {

namespace {

// Presented on a generating subset of its basis with no redundant member.
FPModule as_module(const Submodule& s) {
    return FPModule::subquotient(prune_columns(s.matrix()), Submodule::zero(s.ring(), s.rank()));
}

}  // namespace

SubdirectInstance SubdirectInstance::make(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("instance: A and B live in different ranks");
    const auto& ring = a.ring() ? a.ring() : b.ring();
    if (!ring) throw std::invalid_argument("instance: no ring");
    return SubdirectInstance{ring, a.rows(), Submodule(a), Submodule(b)};
}

bool check_regular(const SubdirectInstance& inst) { return intersect(inst.A, inst.B).is_zero(); }

FPModule interconnection_module(const SubdirectInstance& inst) { return FPModule::quotient(inst.A + inst.B); }

std::optional<Morphism> split_surjection(const Morphism& pi) {
    if (!is_epi(pi)) throw std::invalid_argument("split_surjection: map is not surjective");
    // solve on the simplified presentations, then transport the section back
    const Simplification sn = simplify(pi.source());
    const Simplification st = simplify(pi.target());
    const Morphism small = sn.from.then(pi).then(st.to);
    const auto section = solve_lift(Morphism::identity(small.target()), small);
    if (!section) return std::nullopt;
    return st.to.then(*section).then(sn.from);
}

std::string to_string(FailureReason r) {
    switch (r) {
        case FailureReason::None: return "none";
        case FailureReason::NotRegular: return "not_regular";
        case FailureReason::GradeTooSmall: return "grade_too_small";
        case FailureReason::BudgetExceeded: return "budget_exceeded";
    }
    return "unknown";
}

Certificate certify(const SubdirectInstance& inst, std::uint64_t budget) {
    Certificate cert;
    ScopedBudget scope(budget);
    try {
        cert.regular = check_regular(inst);
        cert.T = interconnection_module(inst);
        cert.gradeT = grade(cert.T);
        cert.hypothesis_met = cert.regular && cert.gradeT.at_least(2);
        if (!cert.regular) cert.failure_reason = FailureReason::NotRegular;
        else if (!cert.hypothesis_met) cert.failure_reason = FailureReason::GradeTooSmall;

        const FPModule m = FPModule::quotient(inst.A);
        cert.torsion_preimage = torsion_submodule(m).preimage;
        cert.tf_factor = FPModule::quotient(cert.torsion_preimage);
        const ProjectivityVerdict v = is_projective(cert.tf_factor);
        cert.projective = v.projective;
        cert.rank = v.rank;
        cert.stably_free_note = v.projective;

        if (cert.hypothesis_met) {
            const Submodule& a1 = cert.torsion_preimage;
            // A <= A', so A' ∩ (A+B) = A + (A' ∩ B) by the modular law
            const Submodule meet = intersect(a1, inst.B);
            cert.torsion_meets_b_trivially = meet.is_zero();
            cert.torsion_meets_sum_in_a = a1.contains(inst.A) && inst.A.contains(meet);
            cert.quotient_grade_two = grade(FPModule::quotient(a1 + inst.B)).at_least(2);
        }
        if (cert.projective) {
            const Morphism pi = Morphism::make(FPModule::free(inst.ring, inst.q), cert.tf_factor,
                                               PolyMatrix::identity(inst.ring, inst.q));
            cert.section = split_surjection(pi);
            cert.section_verified = cert.section && cert.section->then(pi).equals(Morphism::identity(cert.tf_factor));
        }
    } catch (const BudgetExceeded&) {
        cert.failure_reason = FailureReason::BudgetExceeded;
        cert.hypothesis_met = false;
    }
    return cert;
}

ShortExactSequence interconnection_sequence(const SubdirectInstance& inst) {
    const Submodule s = inst.A + inst.B;
    const FPModule n = FPModule::quotient(inst.B);
    const FPModule t = FPModule::quotient(s);
    if (check_regular(inst)) {
        // S/B is A itself; its own basis gives a far smaller presentation
        const PolyMatrix ag = prune_columns(inst.A.matrix());
        const FPModule a = FPModule::subquotient(ag, Submodule::zero(inst.ring, inst.q));
        return ShortExactSequence{Morphism::make(a, n, ag.transpose()),
                                  Morphism::make(n, t, PolyMatrix::identity(inst.ring, inst.q))};
    }
    const PolyMatrix sg = s.matrix();
    const FPModule sb = FPModule::subquotient(sg, inst.B);
    return ShortExactSequence{Morphism::make(sb, n, sg.transpose()),
                              Morphism::make(n, t, PolyMatrix::identity(inst.ring, inst.q))};
}

ComplementResult complement_above(const SubdirectInstance& inst) {
    if (!check_regular(inst)) throw std::invalid_argument("complement_above: A and B intersect nontrivially");
    ComplementResult out;
    const FPModule t = interconnection_module(inst);
    out.ext_witness = ext(1, t, as_module(inst.A));
    if (!out.ext_witness.is_zero()) return out;

    const ShortExactSequence ses = interconnection_sequence(inst);
    const auto section = split_surjection(ses.epi);
    if (!section) throw std::logic_error("complement_above: Ext^1(T, A) vanishes but the sequence does not split");
    const Submodule b1(inst.B.matrix().hstack(section->matrix().transpose()));

    out.contains_b = b1.contains(inst.B);
    out.meets_a_trivially = intersect(inst.A, b1).is_zero();
    out.spans_with_a = inst.A + b1 == Submodule::whole(inst.ring, inst.q);
    const PolyMatrix gens = prune_columns(b1.matrix());
    const Morphism proj = Morphism::make(FPModule::subquotient(gens, Submodule::zero(inst.ring, inst.q)),
                                         FPModule::quotient(inst.A), gens.transpose());
    out.projection_isomorphic = is_mono(proj) && is_epi(proj);
    out.complement = b1;
    return out;
}

AppendixReport appendix_equivalence_check(const ShortExactSequence& ses, const FPModule& p) {
    AppendixReport report;
    const FPModule& t = ses.epi.target();
    report.precondition = ext_vanishes(1, t, p);
    if (!report.precondition) return report;
    report.section = split_surjection(ses.epi);
    report.splits = report.section.has_value();
    report.ext_witness = ext(1, t, ses.mono.source());
    report.ext_vanishes = report.ext_witness.is_zero();
    return report;
}

AppendixReport appendix_equivalence_check(const SubdirectInstance& inst) {
    return appendix_equivalence_check(interconnection_sequence(inst), FPModule::free(inst.ring, inst.q));
}

SubdirectInstance after_torsion_quotient(const SubdirectInstance& inst, const Certificate& cert) {
    return SubdirectInstance{inst.ring, inst.q, cert.torsion_preimage, inst.B};
}

// ---- instance family ----

namespace {

PolyMatrix parse_columns(const RingPtr& ring, std::size_t rows, const std::vector<std::vector<std::string>>& columns) {
    std::vector<FreeVector> vs;
    for (const auto& c : columns) {
        FreeVector v;
        for (const auto& e : c) v.push_back(Polynomial::parse(e, ring));
        vs.push_back(std::move(v));
    }
    return PolyMatrix::from_columns(ring, rows, vs);
}

// U (+) 0 and 0 (+) R^b inside R^(a+b)
SubdirectInstance embed(const PolyMatrix& u, std::size_t b) {
    const auto& ring = u.ring();
    const std::size_t a = u.rows(), q = a + b;
    PolyMatrix am(ring, q, u.cols());
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) am.at(i, j) = u.at(i, j);
    PolyMatrix bm(ring, q, b);
    for (std::size_t j = 0; j < b; ++j) bm.at(a + j, j) = Polynomial(ring, 1L);
    return SubdirectInstance::make(am, bm);
}

}  // namespace

std::vector<NamedInstance> structured_family() {
    const RingPtr r2 = RingDescriptor::polynomial({"x", "y"});
    const RingPtr r3 = RingDescriptor::polynomial({"x", "y", "z"});
    struct Base {
        std::string name;
        RingPtr ring;
        std::size_t a;
        std::vector<std::vector<std::string>> gens;
    };
    const std::vector<Base> bases = {
        {"(x,y)", r2, 1, {{"x"}, {"y"}}},
        {"(x,y)^2", r2, 1, {{"x^2"}, {"x*y"}, {"y^2"}}},
        {"(x,y)^3", r2, 1, {{"x^3"}, {"x^2*y"}, {"x*y^2"}, {"y^3"}}},
        {"(x^2,y)", r2, 1, {{"x^2"}, {"y"}}},
        {"(x,y) in R^2", r2, 2, {{"x", "0"}, {"y", "0"}, {"0", "x"}, {"0", "y"}}},
        {"<(x,0),(y,x),(0,y)>", r2, 2, {{"x", "0"}, {"y", "x"}, {"0", "y"}}},
        {"(x,y,z)", r3, 1, {{"x"}, {"y"}, {"z"}}},
        {"(x,y,z)^2", r3, 1, {{"x^2"}, {"x*y"}, {"x*z"}, {"y^2"}, {"y*z"}, {"z^2"}}},
        {"(x,y) over Q[x,y,z]", r3, 1, {{"x"}, {"y"}}},
        {"(x,y) (+) (x,z)", r3, 2, {{"x", "0"}, {"y", "0"}, {"0", "x"}, {"0", "z"}}},
        {"(x,y) in R^3", r2, 3, {{"x", "0", "0"}, {"y", "0", "0"}, {"0", "x", "0"}, {"0", "y", "0"}, {"0", "0", "x"}, {"0", "0", "y"}}},
    };
    std::vector<NamedInstance> out;
    for (std::size_t b = 1; b <= 2; ++b) {
        for (const auto& base : bases) {
            SubdirectInstance inst = embed(parse_columns(base.ring, base.a, base.gens), b);
            out.push_back({base.name + " + R^" + std::to_string(b), std::move(inst)});
        }
    }
    return out;
}

PolyMatrix random_shear(const RingPtr& ring, std::size_t q, std::mt19937_64& rng, int steps) {
    PolyMatrix g = PolyMatrix::identity(ring, q);
    if (q < 2) return g;
    std::uniform_int_distribution<std::size_t> pos(0, q - 1);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::uniform_int_distribution<std::size_t> var(0, ring->nvars());
    for (int s = 0; s < steps; ++s) {
        const std::size_t i = pos(rng);
        std::size_t j = pos(rng);
        while (j == i) j = pos(rng);
        // multiplier c = constant + linear term
        Polynomial c(ring, static_cast<long>(coef(rng)));
        const std::size_t v = var(rng);
        if (v < ring->nvars()) c += Polynomial::variable(ring, v).scaled(Rational(coef(rng) == 0 ? 1 : coef(rng)));
        // g <- (I + c E_ij) g: row i += c * row j
        for (std::size_t k = 0; k < q; ++k) g.at(i, k) += c * g.at(j, k);
    }
    return g;
}

SubdirectInstance apply_shear(const SubdirectInstance& inst, const PolyMatrix& g) {
    if (g.rows() != inst.q || g.cols() != inst.q) throw std::invalid_argument("apply_shear: matrix size mismatch");
    return SubdirectInstance::make(g * inst.A.matrix(), g * inst.B.matrix());
}

}  // namespace hacert
