#pragma once

// Parameter sweeps over a family's parameterization. Candidates are visited
// in element-code order, so the stream is the same for any thread count
// (threads only split the inner scans).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ppinv/families.hpp"

namespace ppinv {

struct SearchFilter {
    std::optional<std::string> variant;  ///< e0 variant; defaults to "base"
    std::optional<std::int64_t> form;    ///< conclusion 3 form; both when unset
    std::optional<std::uint64_t> limit;  ///< stop after this many candidates pass the gates
    std::function<bool(const FamilyArgs&)> accept;
};

struct SearchStats {
    std::uint64_t candidates = 0;        ///< parameter tuples visited
    std::uint64_t gated = 0;             ///< rejected by a precondition
    std::uint64_t built = 0;             ///< passed the gates
    std::uint64_t yielded = 0;           ///< verified and handed to the sink
    std::uint64_t failed = 0;            ///< passed the gates but some check failed
};

/// Calls visit(args) for every candidate tuple of the family over `field`,
/// in deterministic order, until visit returns false. Returns false if the
/// family has no parameterization over this field.
inline bool enumerate_candidates(FamilyId id, const Field& field, const SearchFilter& filter,
                                 const std::function<bool(const FamilyArgs&)>& visit) {
    const auto& f = *field;
    auto over_a = [&](auto&& base) {
        for (auto a : enumerate_nonzero(f)) {
            FamilyArgs args = base;
            args.a = a;
            if (!visit(args)) return;
        }
    };
    auto over_b = [&](const FamilyArgs& base) {
        for (auto b : enumerate_nonzero(f)) {
            FamilyArgs args = base;
            args.b = b;
            if (!visit(args)) return;
        }
    };
    switch (id) {
    case FamilyId::E0_TRINOMIAL: {
        FamilyArgs base;
        base.variant = filter.variant.value_or("base");
        over_a(base);
        return true;
    }
    case FamilyId::PROP_FIRST:
    case FamilyId::PROP_SECOND:
    case FamilyId::THM_RS_INVERSE:
    case FamilyId::THM_RECIPROCAL_B1:
    case FamilyId::PROP_N3_SEXTIC:
    case FamilyId::E1_FAMILY:
    case FamilyId::CONCLUSION_1:
    case FamilyId::CONCLUSION_2:
        over_a(FamilyArgs{});
        return true;
    case FamilyId::COR_N2K_CASE1:
    case FamilyId::COR_N2K_CASE2:
        over_b(FamilyArgs{});
        return true;
    case FamilyId::CONCLUSION_3:
        for (auto b : enumerate_nonzero(f))
            for (std::int64_t form : {1, 2}) {
                if (filter.form && *filter.form != form) continue;
                FamilyArgs args;
                args.b = b;
                args.form = form;
                if (!visit(args)) return true;
            }
        return true;
    case FamilyId::COR_N2K_CASE3:
    case FamilyId::CONCLUSION_4:
        for (auto a : enumerate_nonzero(f))
            for (auto b : enumerate_nonzero(f)) {
                FamilyArgs args;
                args.a = a;
                args.b = b;
                if (!visit(args)) return true;
            }
        return true;
    case FamilyId::THM_RECIPROCAL_B2: {
        // L = γ·L0(b) with L0 from the corollary's first two cases and β = γ^{q+1}.
        if (f.n() % 2 != 0) return false;
        const std::uint32_t k = f.n() / 2;
        for (auto b : enumerate_nonzero(f)) {
            const bool ok = k % 2 == 1 ? pow(b, f.mult_order() / (f.q() + 1)) != -f.one()
                                       : f.p() != 2 && is_square(b);
            if (!ok) continue;
            const LinPoly l0 = cor_n2k_linpoly(f, b);
            for (auto gamma : enumerate_nonzero(f)) {
                FamilyArgs args;
                args.L = lp_scale(gamma, l0);
                args.beta = pow(gamma, f.q() + 1);
                args.k = k;
                if (!visit(args)) return true;
            }
        }
        return true;
    }
    case FamilyId::F4K_EXAMPLE: {
        if (f.p() != 2 || f.n() != 3 || f.e() % 2 != 0) return false;
        for (std::int64_t choice : {1, 2}) {
            FamilyArgs args;
            args.k = f.e() / 2;
            args.alpha = choice;
            if (!visit(args)) return true;
        }
        return true;
    }
    }
    return false;
}

/// Builds every candidate that passes the family gates and hands each
/// result (verified or not) to `each`. Precondition failures are skipped.
inline SearchStats sweep_family(FamilyId id, const Field& field, const SearchFilter& filter,
                                const std::function<bool(FamilyInstance&&)>& each, const ScanPolicy& policy = {}) {
    SearchStats st;
    enumerate_candidates(id, field, filter, [&](const FamilyArgs& args) {
        ++st.candidates;
        if (filter.accept && !filter.accept(args)) {
            ++st.gated;
            return true;
        }
        FamilyInstance inst;
        try {
            inst = build_family(id, field, args, policy);
        } catch (const PreconditionError&) {
            ++st.gated;
            return true;
        }
        ++st.built;
        if (!inst.verified()) ++st.failed;
        const bool more = each(std::move(inst));
        return more && !(filter.limit && st.built >= *filter.limit);
    });
    return st;
}

/// Streams verified instances only; failures are counted in the stats.
inline SearchStats search_family(FamilyId id, const Field& field, const SearchFilter& filter,
                                 const std::function<bool(FamilyInstance&&)>& sink, const ScanPolicy& policy = {}) {
    SearchStats st = sweep_family(
        id, field, filter,
        [&](FamilyInstance&& inst) {
            if (!inst.verified()) return true;
            return sink(std::move(inst));
        },
        policy);
    st.yielded = st.built - st.failed;
    return st;
}

inline std::vector<FamilyInstance> collect_family(FamilyId id, const Field& field, const SearchFilter& filter = {},
                                                  const ScanPolicy& policy = {}) {
    std::vector<FamilyInstance> out;
    search_family(
        id, field, filter,
        [&](FamilyInstance&& inst) {
            out.push_back(std::move(inst));
            return true;
        },
        policy);
    return out;
}

}  // namespace ppinv
