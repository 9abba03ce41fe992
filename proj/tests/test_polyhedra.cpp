#include <gtest/gtest.h>

#include "support.hpp"

using namespace hornapq;
using testing_support::coeffs;
using testing_support::dot;

namespace {

LinearForm form(std::vector<Rational> c, std::string label = "") {
  LinearForm f;
  f.coeffs = std::move(c);
  f.label = std::move(label);
  return f;
}

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long e : v) out.emplace_back(e);
  return out;
}

ConeSystem make_system(std::size_t dim, std::vector<std::vector<Rational>> forms,
                       std::vector<std::vector<Rational>> equalities = {}) {
  ConeSystem s;
  s.dim = dim;
  for (auto& f : forms) s.forms.push_back(form(std::move(f)));
  for (auto& e : equalities) s.equalities.push_back(form(std::move(e)));
  return s;
}

// Checks a certificate by plain arithmetic, independent of the solver:
// multipliers must rebuild the target, a witness must separate it.
void expect_certificate(const ConeSystem& sys, const std::vector<Rational>& target, const ImplicationResult& r,
                        const std::vector<char>* active = nullptr) {
  if (r.implied) {
    for (const auto& [i, m] : r.form_multipliers) {
      EXPECT_GT(m, 0);
      if (active) EXPECT_TRUE((*active)[i]);
    }
    EXPECT_EQ(combine(sys, r), target);
  } else {
    ASSERT_EQ(r.witness.size(), sys.dim);
    EXPECT_LT(dot(target, r.witness), 0);
    for (std::size_t i = 0; i < sys.forms.size(); ++i)
      if (!active || (*active)[i]) EXPECT_GE(dot(sys.forms[i].coeffs, r.witness), 0) << i;
    for (const auto& e : sys.equalities) EXPECT_EQ(dot(e.coeffs, r.witness), 0);
  }
}

}  // namespace

TEST(Implies, MemberFormHasUnitMultiplier) {
  auto sys = make_system(3, {ints({1, 0, 0}), ints({1, -1, 0}), ints({0, 1, -1})});
  auto r = implies(sys, form(ints({1, -1, 0})));
  ASSERT_TRUE(r.implied);
  ASSERT_EQ(r.form_multipliers.size(), 1u);
  EXPECT_EQ(r.form_multipliers[0].first, 1u);
  EXPECT_EQ(r.form_multipliers[0].second, 1);
}

TEST(Implies, InducedFormWithPublishedMultipliers) {
  // l1+l2-l3-l4+2s1-2s2-2s3 from l1-l4-2s3, l2-l3 and s1-s2 with weights 1, 1, 2.
  auto sys = make_system(9, {coeffs({1, 0, 0, -1, 0, 0}, {0, 0, -2}), coeffs({0, 1, -1, 0, 0, 0}, {0, 0, 0}),
                             coeffs({0, 0, 0, 0, 0, 0}, {1, -1, 0})});
  auto target = coeffs({1, 1, -1, -1, 0, 0}, {2, -2, -2});
  auto r = implies(sys, form(target));
  ASSERT_TRUE(r.implied);
  std::vector<std::pair<std::size_t, Rational>> expect = {{0, 1}, {1, 1}, {2, 2}};
  EXPECT_EQ(r.form_multipliers, expect);
  expect_certificate(sys, target, r);
}

TEST(Implies, ScalingInDimensionOne) {
  auto sys = make_system(1, {ints({1})});
  auto r = implies(sys, form(ints({2})));
  ASSERT_TRUE(r.implied);
  EXPECT_EQ(r.form_multipliers.front().second, 2);
  auto neg = implies(sys, form(ints({-1})));
  EXPECT_FALSE(neg.implied);
  expect_certificate(sys, ints({-1}), neg);
}

TEST(Implies, EqualitiesAreTwoSided) {
  auto sys = make_system(2, {}, {ints({1, -1})});
  for (auto t : {ints({1, -1}), ints({-1, 1}), ints({3, -3})}) {
    auto r = implies(sys, form(t));
    EXPECT_TRUE(r.implied);
    expect_certificate(sys, t, r);
  }
  auto r = implies(sys, form(ints({1, 0})));
  EXPECT_FALSE(r.implied);
  expect_certificate(sys, ints({1, 0}), r);
}

TEST(Implies, ZeroTargetIsAlwaysImplied) {
  auto sys = make_system(2, {ints({1, 0})});
  EXPECT_TRUE(implies(sys, form(ints({0, 0}))).implied);
  EXPECT_TRUE(implies(make_system(2, {}), form(ints({0, 0}))).implied);
  EXPECT_FALSE(implies(make_system(2, {}), form(ints({1, 0}))).implied);
}

TEST(Implies, DimensionMismatch) {
  auto sys = make_system(2, {ints({1, 0})});
  EXPECT_THROW(implies(sys, form(ints({1}))), std::invalid_argument);
}

TEST(Implies, CertificatesOnRandomSystemsAreSound) {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<int> coef(-3, 3), count(1, 7), dimd(2, 5);
  int implied = 0, refuted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t dim = static_cast<std::size_t>(dimd(rng));
    ConeSystem sys;
    sys.dim = dim;
    const int m = count(rng);
    for (int i = 0; i < m; ++i) {
      std::vector<Rational> c(dim);
      for (auto& x : c) {
        x = Rational(coef(rng), 1 + (rng() % 3));
        x.canonicalize();
      }
      sys.forms.push_back(form(c));
    }
    if (rng() % 4 == 0) {
      std::vector<Rational> c(dim);
      for (auto& x : c) x = coef(rng);
      sys.equalities.push_back(form(c));
    }
    std::vector<Rational> target(dim);
    if (rng() % 2 == 0) {
      // A nonnegative combination, so implication is guaranteed.
      for (const auto& f : sys.forms) {
        const int w = static_cast<int>(rng() % 3);
        for (std::size_t k = 0; k < dim; ++k) target[k] += w * f.coeffs[k];
      }
    } else {
      for (auto& x : target) x = coef(rng);
    }
    FarkasSolver solver(sys);
    auto r = solver.check(target);
    expect_certificate(sys, target, r);
    (r.implied ? implied : refuted)++;
  }
  EXPECT_GT(implied, 50);
  EXPECT_GT(refuted, 50);
}

TEST(Prune, DuplicateKeepsOneSurvivor) {
  auto sys = make_system(2, {ints({1, -1}), ints({1, 0}), ints({2, -2})});
  auto r = prune(sys, std::vector<char>(3, 0));
  ASSERT_EQ(r.system.forms.size(), 2u);
  EXPECT_EQ(r.kept, std::vector<std::size_t>({1, 2}));
  EXPECT_EQ(r.removed_count(), 1u);
}

TEST(Prune, ProtectedFormsStay) {
  auto sys = make_system(2, {ints({1, 0}), ints({1, 0}), ints({2, 0})});
  auto r = prune(sys, std::vector<char>({1, 1, 0}));
  EXPECT_EQ(r.kept, std::vector<std::size_t>({0, 1}));
  EXPECT_FALSE(r.verdicts[0]);
  EXPECT_FALSE(r.verdicts[1]);
  ASSERT_TRUE(r.verdicts[2]);
  EXPECT_TRUE(r.verdicts[2]->implied);
  EXPECT_THROW(prune(sys, std::vector<char>({1})), std::invalid_argument);
}

TEST(Prune, FullA22GivesPublishedList) {
  auto full = apq_system(2, 2, ApqVariant::full);
  auto r = prune(full);
  EXPECT_EQ(testing_support::nontrivial_coeff_set(r.system), testing_support::a22_reference());
  EXPECT_EQ(r.system.forms.size() - r.system.background_count(), 4u);
  EXPECT_EQ(r.system.background_count(), full.background_count());
}

TEST(Prune, InducedA33FormIsRemoved) {
  auto full = apq_system(3, 3, ApqVariant::full);
  auto r = prune(full);
  const auto induced = coeffs({1, 1, 0, 0, -1, -1}, {-2, -2, 2});
  bool present = false;
  for (const auto& f : full.forms) present = present || f.coeffs == induced;
  EXPECT_TRUE(present);
  for (const auto& f : r.system.forms) EXPECT_NE(f.coeffs, induced) << f.label;
}

TEST(Prune, VerdictsCarryValidCertificates) {
  auto full = apq_system(3, 2, ApqVariant::full);
  auto r = prune(full);
  std::vector<char> kept_mask(full.forms.size(), 0);
  for (auto k : r.kept) kept_mask[k] = 1;
  for (std::size_t i = 0; i < full.forms.size(); ++i) {
    if (!r.verdicts[i]) {
      EXPECT_TRUE(full.forms[i].background);
      continue;
    }
    const auto& v = *r.verdicts[i];
    if (v.implied) {
      EXPECT_FALSE(kept_mask[i]);
      for (const auto& [j, m] : v.form_multipliers) EXPECT_NE(j, i);
      EXPECT_EQ(combine(full, v), full.forms[i].coeffs);
    } else {
      // A survivor's witness satisfies every other survivor.
      EXPECT_TRUE(kept_mask[i]);
      auto others = kept_mask;
      others[i] = 0;
      expect_certificate(full, full.forms[i].coeffs, v, &others);
    }
  }
}

TEST(Prune, IdempotentAndConePreservingOnGeneratedSystems) {
  std::vector<ConeSystem> systems;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {2, 2}, {3, 2}, {4, 2}, {3, 3}})
    for (auto v : {ApqVariant::full, ApqVariant::restricted, ApqVariant::fflp}) systems.push_back(apq_system(p, q, v));
  for (int n = 2; n <= 4; ++n) systems.push_back(horn_inequality_forms(n));
  for (const auto& s : systems) {
    auto once = prune(s);
    auto twice = prune(once.system);
    EXPECT_EQ(twice.system.forms.size(), once.system.forms.size());
    EXPECT_EQ(twice.removed_count(), 0u);
    EXPECT_TRUE(cone_equal(s, once.system).equal) << s.dim;
  }
}

TEST(Prune, IndependentOfThreadCount) {
  const unsigned saved = thread_cap();
  auto full = apq_system(3, 3, ApqVariant::full);
  set_thread_cap(1);
  auto serial = prune(full);
  set_thread_cap(8);
  auto wide = prune(full);
  set_thread_cap(saved);
  EXPECT_EQ(serial.kept, wide.kept);
  for (std::size_t i = 0; i < serial.verdicts.size(); ++i) {
    ASSERT_EQ(serial.verdicts[i].has_value(), wide.verdicts[i].has_value());
    if (!serial.verdicts[i]) continue;
    EXPECT_EQ(serial.verdicts[i]->implied, wide.verdicts[i]->implied);
    EXPECT_EQ(serial.verdicts[i]->form_multipliers, wide.verdicts[i]->form_multipliers);
    EXPECT_EQ(serial.verdicts[i]->witness, wide.verdicts[i]->witness);
  }
}

TEST(ConeEqual, IdenticalSystems) {
  auto s = apq_system(2, 2, ApqVariant::full);
  auto r = cone_equal(s, s);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.a_in_b.size(), s.forms.size());
  EXPECT_FALSE(r.separation);
}

TEST(ConeEqual, FflpMatchesFullAt22) {
  auto a = apq_system(2, 2, ApqVariant::fflp), b = apq_system(2, 2, ApqVariant::full);
  auto r = cone_equal(a, b);
  EXPECT_TRUE(r.equal);
  for (std::size_t i = 0; i < r.a_in_b.size(); ++i) EXPECT_EQ(combine(b, r.a_in_b[i]), a.forms[i].coeffs);
  for (std::size_t i = 0; i < r.b_in_a.size(); ++i) EXPECT_EQ(combine(a, r.b_in_a[i]), b.forms[i].coeffs);
}

TEST(ConeEqual, DroppingTheTotalSumFormIsDetected) {
  auto full = prune(apq_system(2, 2, ApqVariant::full)).system;
  const auto total = coeffs({1, 1, -1, -1}, {-2, -2});
  ConeSystem reduced = full;
  std::erase_if(reduced.forms, [&](const LinearForm& f) { return f.coeffs == total; });
  ASSERT_EQ(reduced.forms.size() + 1, full.forms.size());

  auto r = cone_equal(full, reduced);
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.separation);
  EXPECT_EQ(r.separation->system, 'a');
  EXPECT_EQ(full.forms[r.separation->index].coeffs, total);
  EXPECT_LT(dot(total, r.separation->witness), 0);
  for (const auto& f : reduced.forms) EXPECT_GE(dot(f.coeffs, r.separation->witness), 0);

  // Hand-picked ray l = (2,0,0,-2), s = (2,1): tight on the other forms, 4 < 6 on the total.
  const auto ray = coeffs({2, 0, 0, -2}, {2, 1});
  for (const auto& f : reduced.forms) EXPECT_GE(dot(f.coeffs, ray), 0) << f.label;
  EXPECT_EQ(dot(total, ray), -2);
}

TEST(ConeEqual, EqualitiesCompareBothWays) {
  auto a = make_system(2, {}, {ints({1, -1})});
  auto b = make_system(2, {ints({1, -1}), ints({-1, 1})});
  EXPECT_TRUE(cone_equal(a, b).equal);
  auto c = make_system(2, {ints({1, -1})});
  auto r = cone_equal(a, c);
  EXPECT_FALSE(r.equal);
  ASSERT_TRUE(r.separation);
  EXPECT_TRUE(r.separation->equality);
  EXPECT_TRUE(r.separation->negated);
}

TEST(ConeEqual, DimensionMismatch) {
  EXPECT_THROW(cone_equal(make_system(2, {}), make_system(3, {})), std::invalid_argument);
}

TEST(ConeSystem, ValidateCatchesDimensionErrors) {
  auto s = make_system(2, {ints({1, 0, 0})});
  EXPECT_THROW(s.validate(), std::invalid_argument);
  auto t = make_system(2, {ints({1, 0})});
  t.layout = {{"x", 3}};
  EXPECT_THROW(t.validate(), std::invalid_argument);
}
