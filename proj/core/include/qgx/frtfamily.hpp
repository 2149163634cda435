// Presentations of the quantum matrix groups built by the FRT construction:
// relations, cofactor matrix s, determinants, the central element 𝒬, ideal
// generators for each variant, Hopf data and the morphisms φ, ϱ, φ̃.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgx/freealg.hpp"
#include "qgx/rmatrix.hpp"

namespace qgx {

class InvalidVariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Variant { Plain, Special, Tilde, SpecialTilde };

std::string variant_name(Variant v);
Variant parse_variant(const std::string& s);
/// A: plain, special, tilde. B: plain, special, tilde. C: plain, tilde.
/// D: all four.
bool variant_valid(const Series& s, Variant v);
std::vector<Variant> valid_variants(const Series& s);

/// Entries of R̂V₁V₂ − V₁V₂R̂, zero entries and scalar duplicates removed, then
/// thinned to a basis of their span.
std::vector<NCPoly> frt_relations(const RTensor& Rhat);
/// All nonzero entries, no deduplication. Entry (a,b),(c,d) is
/// Σ R̂[(a,b),(k,l)] V[k,c]V[l,d] − Σ V[a,k]V[b,l] R̂[(k,l),(c,d)].
std::vector<NCPoly> frt_relations_raw(const RTensor& Rhat);
/// Rank of a list of polynomials as vectors over the coefficient field.
std::size_t linear_rank(const std::vector<NCPoly>& polys);

/// Cofactor matrix. B/C/D: single terms ±q^{ρ_j−ρ_i} V[N+1−j, N+1−i].
/// A: quantum minors weighted by (−q)^{i−j}, summed along the deleted row.
NCMatrix s_matrix(const Series& s);
/// Series A only: the same minors summed along the deleted column.
NCMatrix s_matrix_column_form(const Series& s);

enum class DetForm { Standard, Transposed };  // V[σ(k),k] products vs V[k,σ(k)]
enum class DetReading { AllIndices, FirstHalf };

/// Permutation-sum determinant Σ (−q)^{ℓ(σ)} q^{±r(σ)} Π V[σ(k),k]. The
/// q^{r} weight is +r for C, −r for D and absent for A.
NCPoly quantum_determinant(const Series& s, DetForm form = DetForm::Standard,
                           DetReading reading = DetReading::AllIndices);
/// Number of inversions of a permutation given as 1-based images.
int inversions(const std::vector<int>& sigma);
/// r(σ) under the chosen reading.
int r_statistic(const std::vector<int>& sigma, int n, DetReading reading);

/// Determinant read off the top degree of the quantum exterior algebra
/// T(V)/⟨image of (R̂ + q⁻¹)⟩ (C: (R̂ + q⁻¹)(R̂ + q^{−N−1})), normalized so
/// the coefficient of V[1,1]⋯V[N,N] is 1.
NCPoly exterior_determinant(const Series& s, const RTensor* Rhat = nullptr);

/// Σ_k V[i,k] s[k,i]
NCPoly q_element(const Series& s, int i);
/// Σ_k s[i,k] V[k,i]
NCPoly q_element_sv(const Series& s, int i);

struct Presentation {
  Series series;
  Variant variant = Variant::Plain;
  bool has_t = false;
  RTensor Rhat;
  std::vector<NCPoly> relations;       // ideal generators
  std::vector<std::string> labels;     // one per relation
  std::size_t frt_count = 0;           // leading relations that come from R̂
  NCMatrix s;
  std::optional<NCPoly> det;           // determinant used by the presentation
  std::optional<NCPoly> qelt;          // 𝒬 (B/C/D)
  std::optional<GeneratorImages> antipode;
  std::optional<GeneratorImages> star;

  int N() const { return series.N; }
  /// 𝒬 for B/C/D, the determinant for A.
  const NCPoly& central() const;
  std::string name() const;
};

struct PresentationOptions {
  /// Replace the R̂ built from the series (used by mutation tests).
  std::optional<RTensor> rhat_override;
};

Presentation build_presentation(const Series& s, Variant v, const PresentationOptions& opts = {});
std::vector<NCPoly> ideal_generators(const Series& s, Variant v);

enum class MorphismKind { Phi, Rho, PhiTilde };
std::string morphism_name(MorphismKind k);

/// Generator table of the morphism into the algebra of size target.N:
/// φ, φ̃ go from size N+2 to N; ϱ stays at size N and sends t to 1.
/// φ̃ sends V[N+2,N+2] to 𝒬 (the image of t⁻¹) and t to t.
GeneratorImages morphism_images(MorphismKind kind, const Series& target);
/// Composition: (outer ∘ inner) on generators.
GeneratorImages compose(const GeneratorImages& outer, const GeneratorImages& inner);
/// Nonzero entries of (φ∘ϱ_src − ϱ_tgt∘φ̃) on the generators of the source.
/// They must vanish in the plain quotient of size target.N.
std::vector<NCPoly> morphism_square_defect(const Series& target);
/// The two generator tables agree exactly.
bool morphism_square_commutes(const Series& target);

/// JSON document with series, N, variant, relations and Hopf data.
std::string presentation_json(const Presentation& p);

}  // namespace qgx
