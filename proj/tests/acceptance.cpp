// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/brute_force.hpp"
#include "twb/brauer.hpp"
#include "twb/koszul.hpp"
#include "twb/modules.hpp"
#include "twb/operad.hpp"
#include "twb/symfb.hpp"

using namespace twb;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.ok) ++failures;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " (" << buf << ")";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

const char* pname(Parity p) { return p == Parity::symmetric ? "S" : "L"; }

mpz_class fact(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

mpz_class binom(const mpz_class& n, int k) {
  if (k == 0) return 1;
  if (k < 0 || n < k) return 0;
  mpz_class r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

std::string lvl(Level l) { return std::to_string(l.first) + ":" + std::to_string(l.second); }

// ---------------------------------------------------------------- [1]

void square_zero_family(const DownModule& m, bool walled, int N, const std::string& label, Outcome& o, int& built) {
  std::vector<Level> exts;
  if (walled) {
    for (int x = 0; x <= 2; ++x)
      for (int y = 0; x + y <= 2; ++y) exts.push_back({x, y});
  } else {
    for (int e = 0; e <= 2; ++e) exts.push_back({e, 0});
  }
  for (auto e : exts)
    for (int flavor = 0; flavor < 2; ++flavor) {
      KoszulComplex k = flavor ? build_second(m, e, N) : build_first(m, e, N);
      try {
        k.check_square_zero();
      } catch (const ContractViolation& ex) {
        o.fail(label + (flavor ? " second " : " first ") + lvl(e) + ": " + ex.what());
      }
      ++built;
    }
}

Outcome criterion_square_zero() {
  Outcome o;
  int built = 0;
  for (int which = 0; which < 2; ++which) {
    const char* name = which ? "Assoc" : "Com";
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      const int N = 8;
      CyclicOperadData c = which ? builtin_assoc_cyclic(N) : builtin_com_cyclic(N);
      std::string tag = std::string(name) + " " + pname(p);
      square_zero_family(power_module_cyclic(c, p, N), false, N, tag + " unwalled", o, built);
      // the walled module carries ordering sign +/-; dJ reaches the other first sign
      int s = p == Parity::symmetric ? 1 : -1;
      const int Nj = which ? 7 : 8;
      {
        DownModule pd = power_module_dioperad(to_dioperad(c), p, N);
        square_zero_family(pd, true, N, tag + " walled", o, built);
      }
      CyclicOperadData cj = which ? builtin_assoc_cyclic(Nj) : c;
      DownModule dj = dJ_apply(power_module_dioperad(to_dioperad(cj), p, Nj), {-s, s});
      square_zero_family(dj, false, Nj, tag + " unwalled twist (" + (s > 0 ? "-;+" : "+;-") + ")", o, built);
    }
  }
  if (o.ok)
    o.detail = std::to_string(built) +
               " complexes; twists (+;+),(-;-) and walled +/- at N=8, (-;+),(+;-) at N=8 for Com and N=7 for Assoc";
  return o;
}

// ---------------------------------------------------------------- [2]

Outcome criterion_hom_dims() {
  Outcome o;
  std::size_t cases = 0;
  auto check = [&](const CatTag& tag, Obj src, Obj dst, const mpz_class& expect) {
    std::size_t got = hom_basis(tag, src, dst).size();
    mpz_class formula = hom_dimension_formula(tag, src, dst);
    ++cases;
    if (mpz_class(static_cast<unsigned long>(got)) != expect || formula != expect) {
      std::ostringstream s;
      s << tag.str() << " " << src.left << ":" << src.right << "->" << dst.left << ":" << dst.right << " enumerated "
        << got << " formula " << formula << " expected " << expect;
      o.fail(s.str());
    }
  };
  for (int first : {1, -1})
    for (int order : {1, -1}) {
      CatTag ub{Shape::ub, true, {first, order}};
      for (int a = 0; a <= 4; ++a)
        for (int n = 0; n <= 8; ++n) {
          mpz_class e = 0;
          if (n >= a && (n - a) % 2 == 0) {
            int t = (n - a) / 2;
            e = fact(n) / (fact(t) << t);
          }
          check(ub, {a, 0}, {n, 0}, e);
        }
    }
  for (int order : {1, -1}) {
    CatTag dub{Shape::dub, true, {1, order}};
    for (int a = 0; a <= 4; ++a)
      for (int n = 0; n <= 8; ++n) {
        mpz_class e = 0;
        if (n >= a && (n - a) % 2 == 0) e = fact(n) / fact((n - a) / 2);
        check(dub, {a, 0}, {n, 0}, e);
      }
    CatTag uwb{Shape::uwb, true, {1, order}};
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; m + n <= 4; ++n)
        for (int m2 = 0; m2 <= 8; ++m2)
          for (int n2 = 0; m2 + n2 <= 8; ++n2) {
            mpz_class e = 0;
            int k = m2 - m;
            if (k >= 0 && n2 - n == k) e = fact(m2) * fact(n2) / fact(k);
            check(uwb, {m, n}, {m2, n2}, e);
          }
  }
  if (o.ok) o.detail = std::to_string(cases) + " hom spaces";
  return o;
}

// ---------------------------------------------------------------- [3]

Outcome criterion_transfer() {
  Outcome o;
  std::size_t checked = 0;
  for (int first : {1, -1})
    for (int order : {1, -1}) {
      CatTag ub{Shape::ub, true, {first, order}};
      for (int t = 0; t <= 3; ++t)
        for (int a = 0; a <= 2; ++a) {
          HomBasis hb = hom_basis(ub, {a, 0}, {a + 2 * t, 0});
          for (const auto& f : hb.elements) {
            auto terms = transfer_expand(f);
            if (terms.size() != (std::size_t(1) << t)) o.fail("expansion of " + f.str() + " has wrong length");
            std::map<std::vector<int>, Scalar> sum;
            for (const auto& term : terms) {
              BrauerMorphism q = normalize(quotient_mp(term, first));
              if (!(q.tag == f.tag)) o.fail("quotient lands in " + q.tag.str());
              sum[q.key()] += q.coeff;
            }
            Scalar expect = f.coeff * Scalar(1 << t);
            for (auto it = sum.begin(); it != sum.end();)
              it = it->second == 0 ? sum.erase(it) : std::next(it);
            if (sum.size() != 1 || sum.begin()->first != f.key() || sum.begin()->second != expect)
              o.fail("mp(Tr(f)) != 2^t f for " + f.str());
            ++checked;
          }
        }
    }
  if (o.ok) o.detail = std::to_string(checked) + " basis morphisms, t <= 3, four twists";
  return o;
}

// ---------------------------------------------------------------- [4]

Outcome criterion_j_l() {
  Outcome o;
  CatTag w{Shape::uwb, true, {1, 1}};
  UpModule P = representable_up(w, {0, 0}, 4);
  UpModule J = J_apply(P, 1);
  InducedModule L = induce_L(P, 1, 4);
  std::size_t dj = J.dim({2, 0}), dl = L.module.dim({2, 0});
  std::size_t r = rank(L.from_J.at({2, 0}));
  if (dj != 2) o.fail("dim J(2) = " + std::to_string(dj));
  if (dl != 1) o.fail("dim L(2) = " + std::to_string(dl));
  if (r != 1) o.fail("rank J(2) -> L(2) = " + std::to_string(r));
  if (o.ok) o.detail = "dim J(2) = 2, dim L(2) = 1, surjection rank 1";
  return o;
}

// ---------------------------------------------------------------- [5]-[8]

Outcome from_reports(const std::vector<std::pair<std::string, VerifyReport>>& reports) {
  Outcome o;
  for (const auto& [name, r] : reports)
    if (!r.ok()) o.fail(name + ": " + r.failures.front());
  if (o.ok) o.detail = std::to_string(reports.size()) + " cases";
  return o;
}

Outcome criterion_cyclic_to_dioperad() {
  std::vector<std::pair<std::string, VerifyReport>> reps;
  for (Parity p : {Parity::symmetric, Parity::exterior}) {
    reps.push_back({std::string("Com ") + pname(p), verify_cyclic_to_dioperad_modules(builtin_com_cyclic(6), p, 6)});
    reps.push_back({std::string("Assoc ") + pname(p), verify_cyclic_to_dioperad_modules(builtin_assoc_cyclic(6), p, 6)});
  }
  return from_reports(reps);
}

Outcome criterion_dioperad_to_cyclic() {
  std::vector<std::pair<std::string, VerifyReport>> reps;
  for (Parity p : {Parity::symmetric, Parity::exterior}) {
    reps.push_back({std::string("Com ") + pname(p), verify_dioperad_to_cyclic_modules(to_dioperad(builtin_com_cyclic(6)), p, 6)});
    reps.push_back(
        {std::string("Assoc ") + pname(p), verify_dioperad_to_cyclic_modules(to_dioperad(builtin_assoc_cyclic(6)), p, 6)});
    reps.push_back({std::string("Com operad ") + pname(p), verify_dioperad_to_cyclic_modules(builtin_com_operad(6), p, 6)});
  }
  return from_reports(reps);
}

Outcome criterion_diopd_comparison() {
  std::vector<std::pair<std::string, VerifyReport>> reps;
  for (Parity p : {Parity::symmetric, Parity::exterior})
    reps.push_back({std::string("Com operad ") + pname(p), verify_diopd_comparison(builtin_com_operad(6, false), p, 2, 6)});
  return from_reports(reps);
}

Outcome criterion_unit_vanishing() {
  std::vector<std::pair<std::string, VerifyReport>> reps;
  for (Parity p : {Parity::exterior, Parity::symmetric})
    reps.push_back({std::string("unital Com operad ") + pname(p), verify_unit_vanishing(builtin_com_operad(6, true), p, 6)});
  return from_reports(reps);
}

// ---------------------------------------------------------------- [9]

Outcome criterion_dimension_identity() {
  Outcome o;
  std::size_t cases = 0;
  for (int first : {1, -1})
    for (int order : {1, -1})
      for (int u = 0; u <= 4; ++u)
        for (int x = 0; x <= 3; ++x)
          for (int y = 0; y <= 3; ++y) {
            DimensionIdentity d = upsilon_dimension_identity({first, order}, u, x, y);
            // left side is a plain unwalled hom space U -> X u Y
            int n = x + y;
            mpz_class hom = 0;
            if (n >= u && (n - u) % 2 == 0) hom = fact(n) / (fact((n - u) / 2) << ((n - u) / 2));
            ++cases;
            if (d.lhs != d.rhs || mpz_class(static_cast<unsigned long>(d.lhs)) != hom) {
              std::ostringstream s;
              s << "twist (" << first << ";" << order << ") u=" << u << " x=" << x << " y=" << y << ": " << d.lhs
                << " vs " << d.rhs << " (hom count " << hom << ")";
              o.fail(s.str());
            }
          }
  if (o.ok) o.detail = std::to_string(cases) + " cases";
  return o;
}

// ---------------------------------------------------------------- [10]

FBModule truncated(const FBModule& m, int max_level) {
  FBModule out;
  for (const auto& [n, r] : m.levels())
    if (n <= max_level) out.set_level(n, r);
  return out;
}

std::vector<std::pair<std::string, FBModule>> schur_corpus() {
  std::vector<std::pair<std::string, FBModule>> out;
  out.push_back({"k1", FBModule::k_at(1)});
  out.push_back({"k2", FBModule::k_at(2)});
  out.push_back({"Com", truncated(builtin_com_cyclic(4).underlying, 4)});
  out.push_back({"Assoc", truncated(builtin_assoc_cyclic(4).underlying, 4)});
  out.push_back({"Com<=3", truncated(builtin_com_cyclic(4).underlying, 3)});
  out.push_back({"Assoc<=3", truncated(builtin_assoc_cyclic(4).underlying, 3)});
  FBModule mixed;
  mixed.set_level(1, SymRep::trivial({1}));
  mixed.set_level(2, SymRep::sign({2}));
  mixed.set_level(3, SymRep::regular(3));
  out.push_back({"triv1+sgn2+reg3", mixed});
  FBModule with_unit = FBModule::unit();
  with_unit.set_level(2, SymRep::trivial({2}));
  out.push_back({"k0+triv2", with_unit});
  return out;
}

Outcome criterion_day_schur() {
  Outcome o;
  auto corpus = schur_corpus();
  std::size_t checks = 0;
  // disjoint-union pullback is monoidal
  for (const auto& [na, a] : corpus)
    for (const auto& [nb, b] : corpus) {
      FB2Module lhs = amalg_pull(day_convolve(a, b));
      FB2Module rhs = day_convolve(amalg_pull(a), amalg_pull(b));
      for (int p = 0; p <= 8; ++p)
        for (int q = 0; p + q <= 8; ++q) {
          ++checks;
          if (lhs.dim(p, q) != rhs.dim(p, q))
            o.fail("monoidality " + na + "," + nb + " at " + std::to_string(p) + ":" + std::to_string(q));
        }
    }
  // Schur evaluation is multiplicative and sends powers to powers
  for (const auto& [na, a] : corpus) {
    for (int d = 0; d <= 3; ++d) {
      mpz_class D = schur_eval(a, d);
      for (const auto& [nb, b] : corpus) {
        if (a.max_level() + b.max_level() > 6) continue;
        ++checks;
        if (schur_eval(day_convolve(a, b), d) != D * schur_eval(b, d))
          o.fail("multiplicativity " + na + "," + nb + " at dim " + std::to_string(d));
      }
      for (int k = 0; k <= 3; ++k) {
        if (a.max_level() * k > 6) continue;
        ++checks;
        if (schur_eval(power(a, k, Parity::symmetric), d) != binom(D + k - 1, k))
          o.fail("symmetric power " + na + " k=" + std::to_string(k) + " dim " + std::to_string(d));
        ++checks;
        if (schur_eval(power(a, k, Parity::exterior), d) != binom(D, k))
          o.fail("exterior power " + na + " k=" + std::to_string(k) + " dim " + std::to_string(d));
      }
      // bivariant evaluation of the pullback is evaluation on the direct sum
      for (int w = 0; w + d <= 3; ++w) {
        ++checks;
        if (schur_eval(amalg_pull(a), d, w) != schur_eval(a, d + w))
          o.fail("bivariant evaluation " + na + " at " + std::to_string(d) + "," + std::to_string(w));
      }
    }
  }
  // symmetric and exterior powers have equal underlying dimensions when F(0) = 0
  for (const auto& [na, a] : corpus) {
    if (a.dim(0) != 0) continue;
    for (int k = 0; k <= 6; ++k) {
      FBModule s = power(a, k, Parity::symmetric, 6), l = power(a, k, Parity::exterior, 6);
      for (int n = 0; n <= 6; ++n) {
        ++checks;
        if (s.dim(n) != l.dim(n)) o.fail("S/L underlying " + na + " k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checks) + " identities over " + std::to_string(corpus.size()) + " modules";
  return o;
}

// ---------------------------------------------------------------- [11]

void compare_oracle(const oracle::Result& r, const KoszulComplex& k, const std::string& label, Outcome& o,
                    std::size_t& spots) {
  if (!r.well_defined) o.fail(label + ": oracle differential not well defined");
  if (!r.square_zero) o.fail(label + ": oracle d^2 != 0");
  HomologyTable h = homology(k);
  std::size_t engine_nonzero = 0;
  for (Level l : k.internal)
    if (k.chain_dim(l) != 0) ++engine_nonzero;
  std::size_t oracle_nonzero = 0;
  for (const auto& s : r.spots) {
    ++spots;
    if (s.chain_dim) ++oracle_nonzero;
    if (k.chain_dim(s.internal) != s.chain_dim || h.at(s.internal) != s.homology) {
      std::ostringstream os;
      os << label << " at " << lvl(s.internal) << ": engine chain " << k.chain_dim(s.internal) << " homology "
         << h.at(s.internal) << ", oracle chain " << s.chain_dim << " homology " << s.homology;
      o.fail(os.str());
    }
  }
  if (engine_nonzero != oracle_nonzero) o.fail(label + ": engine reports chain spots the oracle does not enumerate");
}

Outcome criterion_oracle() {
  Outcome o;
  std::size_t spots = 0, complexes = 0;
  for (int N = 2; N <= 4; ++N)
    for (Parity p : {Parity::symmetric, Parity::exterior}) {
      bool ext = p == Parity::exterior;
      DownModule pc = power_module_cyclic(builtin_com_cyclic(N), p, N);
      DownModule pd = power_module_dioperad(to_dioperad(builtin_com_cyclic(N)), p, N);
      DownModule po = power_module_dioperad(builtin_com_operad(N, false), p, N);
      for (int second = 0; second < 2; ++second) {
        auto fl = second ? oracle::Flavor::second : oracle::Flavor::first;
        auto build = [&](const DownModule& m, Level e) { return second ? build_second(m, e, N) : build_first(m, e, N); };
        std::string base = std::string(pname(p)) + (second ? " second" : " first") + " N=" + std::to_string(N);
        for (int e = 0; e <= 2 && e <= N; ++e) {
          compare_oracle(oracle::unwalled_com(ext, fl, e, N), build(pc, {e, 0}), base + " unwalled " + std::to_string(e), o,
                         spots);
          ++complexes;
        }
        for (int x = 0; x <= 2; ++x)
          for (int y = 0; x + y <= 2 && x + y <= N; ++y) {
            compare_oracle(oracle::walled_com(ext, false, fl, {x, y}, N), build(pd, {x, y}), base + " walled " + lvl({x, y}),
                           o, spots);
            compare_oracle(oracle::walled_com(ext, true, fl, {x, y}, N), build(po, {x, y}),
                           base + " walled operad " + lvl({x, y}), o, spots);
            complexes += 2;
          }
      }
    }
  if (o.ok) o.detail = std::to_string(complexes) + " complexes, " + std::to_string(spots) + " chain spots";
  return o;
}

}  // namespace

int main() {
  std::cout << "acceptance suite" << std::endl;
  run(1, "d^2 = 0: first/second x walled/unwalled, Com and Assoc, both parities, all twists, externals <= 2",
      criterion_square_zero);
  run(2, "hom dimension closed forms vs enumeration, src <= 4, dst <= 8", criterion_hom_dims);
  run(3, "transfer scaling mp o Tr = 2^t on hom bases, t <= 3", criterion_transfer);
  run(4, "J/L example: dim J(2) = 2, dim L(2) = 1", criterion_j_l);
  run(5, "cyclic power modules restrict to dioperad power modules (Com, Assoc, N = 6)", criterion_cyclic_to_dioperad);
  run(6, "unwalled dioperad power modules match cyclic power modules (N = 6)", criterion_dioperad_to_cyclic);
  run(7, "dioperad comparison of second complexes, Com operad, externals <= 2, N = 6", criterion_diopd_comparison);
  run(8, "unit vanishing for the unital Com operad, N = 6", criterion_unit_vanishing);
  run(9, "upsilon restriction dimension identity, |U| <= 4, |X|,|Y| <= 3, four twists", criterion_dimension_identity);
  run(10, "Day convolution and Schur evaluation identities, supports <= 4", criterion_day_schur);
  run(11, "brute-force oracle reproduces chain and homology dimensions, Com, N <= 4", criterion_oracle);
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : std::string("acceptance: all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
