#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

Allocation cut_and_choose(const Instance& inst) {
  if (inst.agents() != 2) throw ArityError("cut-and-choose needs exactly two agents");
  BundlePair first = most_equal_partition(inst, 0);
  BundlePair second = most_equal_partition(inst, 1);
  const AgentId cutter = first.gap <= second.gap ? 0 : 1;
  const AgentId chooser = 1 - cutter;
  BundlePair& cut = cutter == 0 ? first : second;

  Allocation a = Allocation::empty(inst);
  if (utility(inst, chooser, cut.higher) > utility(inst, chooser, cut.lower)) {
    a[chooser] = std::move(cut.higher);
    a[cutter] = std::move(cut.lower);
  } else {
    a[chooser] = std::move(cut.lower);
    a[cutter] = std::move(cut.higher);
  }
  return a;
}

}  // namespace fairdiv
