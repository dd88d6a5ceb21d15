/**
 * @file cfrac.hpp
 * @brief J-fractions 1/(1 - b_0 x - lam_1 x^2/(1 - b_1 x - lam_2 x^2/...)).
 *
 * Series coefficients are computed as weighted Motzkin paths: a level step
 * at height h weighs b_h, a down step from height h weighs lam_h, up steps
 * weigh 1.  The closed Jacobi-Rogers sum is provided as an independent route
 * together with its individual terms.
 */
#pragma once

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "eulerian/polycore.hpp"

namespace eulerian::cfrac {

struct JSpec {
  std::string name;
  std::function<MultiPoly(unsigned)> b;
  std::function<MultiPoly(unsigned)> lam;  // lam(0) is never used
};

/// mu_0 .. mu_N.
std::vector<MultiPoly> moments(const JSpec& spec, unsigned N);

/// One summand of the Jacobi-Rogers formula.  An empty n_vec encodes the
/// lone b_0^n term (then m_vec == {n}).
struct JRTerm {
  unsigned h = 0;
  std::vector<unsigned> n_vec;  // n_0 .. n_h, all >= 1
  std::vector<unsigned> m_vec;  // m_0 .. m_{h+1}
  Coeff rho;                    // combinatorial multiplicity
  MultiPoly weight;             // rho * prod b_j^{m_j} * prod lam_{j+1}^{n_j}
};

/// Visits every term for x^n (n >= 1) in deterministic order: the b_0^n term,
/// then h = 0, 1, ... with n- and m-compositions in lexicographic order.
void for_each_jr_term(const JSpec& spec, unsigned n,
                      const std::function<void(const JRTerm&)>& visit);

std::vector<JRTerm> jr_terms(const JSpec& spec, unsigned n);

/// Sum of jr_terms; throws std::invalid_argument for n == 0.
MultiPoly jacobi_rogers(const JSpec& spec, unsigned n);

/// Named spectra: CF_Q, CF_tildeA, CF_Astar, CF_hatA, CF_B, CF_P.
JSpec preset(std::string_view name);
const std::vector<std::string>& preset_names();

/// Applies a simultaneous variable substitution to both spectra.
JSpec specialize(const JSpec& spec, std::map<Var, MultiPoly> images, std::string name);

}  // namespace eulerian::cfrac
