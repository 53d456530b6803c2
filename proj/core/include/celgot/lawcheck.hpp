#pragma once

// Checks of the monad-level iteration laws on small instances: the four
// Elgot axioms, dinaturality, the Bekić identity and the weak axiom.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "celgot/effects.hpp"
#include "celgot/report.hpp"

namespace celgot {

enum class LawId : std::uint8_t {
  Fixpoint,
  Naturality,
  Codiagonal,
  CodiagonalFootnote,
  Uniformity,
  Dinaturality,
  Bekic,
  Weak,
};

/// f : X ⇸ Y+X ↦ f† : X ⇸ Y.
using IterationOperator = std::function<KleisliMap(const KleisliMap&)>;

/// Carrier sizes.  Laws use the carriers they need and ignore the rest.
struct SizeBounds {
  std::size_t x = 1;
  std::size_t y = 1;
  std::size_t z = 1;
};

/// The quantified morphisms of one law instance:
///   fixpoint       f : X ⇸ Y+X
///   naturality     f : X ⇸ Y+X, g : Y ⇸ Z
///   codiagonal     g : X ⇸ (Y+X)+X  (footnote form: g : X ⇸ Y+(X+X))
///   uniformity     f : X ⇸ Y+X, g : Z ⇸ Y+Z, h : Z → X
///   dinaturality   g : X ⇸ Y+Z, h : Z ⇸ Y+X
///   Bekić          f : Y ⇸ (Z+Y)+X, g : X ⇸ (Z+Y)+X
///   weak           g : X ⇸ Y+X, f : Y ⇸ Z+Y
struct LawInstance {
  LawId law;
  EffectMonadId monad;
  Carrier x;
  Carrier y;
  Carrier z;
  std::optional<KleisliMap> f;
  std::optional<KleisliMap> g;
  std::optional<KleisliMap> h;
  std::optional<BaseMap> hb;
  std::string id;
};

namespace laws {

const char* law_name(LawId id);
std::optional<LawId> parse_law(const std::string& name);
const std::vector<LawId>& all_laws();

/// Least fixed points via effects::iterate.
IterationOperator kleene(effects::IterationPolicy policy = effects::IterationPolicy::exact());
/// The n-th Kleene approximant, whether or not the chain has stabilized.
IterationOperator truncated(std::size_t depth = 1);

Carrier x_carrier(std::size_t n);
Carrier y_carrier(std::size_t n);
Carrier z_carrier(std::size_t n);

/// Number of instances the exhaustive enumeration would produce.
double instance_count(LawId law, const EffectMonadId& monad, const SizeBounds& sizes);

/// Every instance with the given carrier sizes, in a fixed order (Maybe and
/// FinPowerset); `samples` pseudo-random instances for TracePowerset.  Empty
/// when a carrier the law uses has size zero.  Throws BudgetExceeded with the
/// instance count when it is above the budget.
std::vector<LawInstance> enumerate_instances(LawId law, const EffectMonadId& monad, const SizeBounds& sizes,
                                             std::size_t budget = 1u << 16, std::size_t samples = 64,
                                             unsigned seed = 11);

/// Evaluates both sides with `iter`.  Uniformity instances whose premise
/// fails are vacuous passes; NonConvergence becomes a NONCONV verdict.
CheckResult check_law(const LawInstance& inst, const IterationOperator& iter);

struct SuiteOptions {
  std::vector<LawId> laws = all_laws();
  EffectMonadId monad = EffectMonadId::maybe();
  /// Every combination of sizes 1..max_size for the carriers a law uses.
  std::size_t max_size = 1;
  /// For the trace monad: compare traces of length < depth.
  std::size_t depth = 4;
  std::size_t budget = 1u << 16;
  std::size_t samples = 64;
  unsigned seed = 11;
  bool keep_passing_lines = false;
};

/// Runs the suite.  For the trace monad the horizon is set to depth-1, so
/// both sides are compared on traces shorter than `depth`.
Report run_suite(const SuiteOptions& options, const IterationOperator& iter);

}  // namespace laws
}  // namespace celgot
