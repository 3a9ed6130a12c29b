// SPDX-License-Identifier: Apache-2.0
#include "lanematch/filter.hpp"

namespace lanematch {

CandidateFilter::CandidateFilter(const QueryGraph& q, const MatchingOrder& order, const Graph& g,
                                 Mode mode)
    : mode_(mode), words_((g.num_vertices() + 63) / 64) {
  const std::size_t positions = order.size();
  bits_.assign(positions * words_, 0);
  counts_.assign(positions, 0);
  for (std::size_t pos = 0; pos < positions; ++pos) {
    const VertexId u = order.phi[pos];
    const LabelId want = q.label(u);
    const std::uint32_t need = mode == Mode::kLabelDegree ? q.degree(u) : 0;
    auto* row = bits_.data() + pos * words_;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (g.label(v) == want && g.degree(v) >= need) {
        row[v >> 6] |= std::uint64_t{1} << (v & 63);
        ++counts_[pos];
      }
    }
  }
}

}  // namespace lanematch
