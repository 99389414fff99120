#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "relhorn/structure.hpp"
#include "relhorn/theory.hpp"

namespace relhorn {

/// Every structure on carrier "0".."n-1" (all edge subsets). With
/// `force_loops` the loop tuples R v...v are always present. Throws when
/// more than 2^24 structures would be produced.
[[nodiscard]] std::vector<Structure> all_structures(const SignaturePtr& sig, std::size_t n, bool force_loops = false);

/// Visits the same structures without materialising them.
void for_each_structure(const SignaturePtr& sig, std::size_t n, bool force_loops,
                        const std::function<void(const Structure&)>& fn);

/// Iso-invariant key: the least edge encoding over all carrier permutations.
[[nodiscard]] std::vector<std::uint32_t> canonical_key(const Structure& x);
[[nodiscard]] bool isomorphic(const Structure& a, const Structure& b);
/// First member of each isomorphism class, input order preserved.
[[nodiscard]] std::vector<Structure> iso_representatives(const std::vector<Structure>& xs);

/// All T-models on 0..max_n elements (labelled), sizes ascending. For
/// quantale signatures whose theory entails the V-graph axioms, models are
/// generated from distance tables instead of raw edge subsets.
[[nodiscard]] std::vector<Structure> models_up_to(const Theory& t, std::size_t max_n);

struct FamilyOptions {
    bool iso_reduce = true;
    std::size_t cap = 0; ///< 0 = no cap
    std::uint64_t seed = 0;
};

/// T-models of size ≤ max_n, iso-reduced, then capped by seeded sampling.
[[nodiscard]] std::vector<Structure> model_family(const Theory& t, std::size_t max_n, const FamilyOptions& opts = {});
/// All structures of size ≤ max_n over the signature, same treatment.
[[nodiscard]] std::vector<Structure> structure_family(const SignaturePtr& sig, std::size_t max_n,
                                                      const FamilyOptions& opts = {});

/// Deterministic subsample of `cap` members (order preserved) when
/// xs.size() > cap.
[[nodiscard]] std::vector<Structure> sample_family(std::vector<Structure> xs, std::size_t cap, std::uint64_t seed);

} // namespace relhorn
