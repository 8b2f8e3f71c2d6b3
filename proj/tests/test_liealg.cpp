#include <doctest.h>

#include <fstream>
#include <sstream>

#include "chevtwist/liealg.hpp"

using namespace chevtwist;

namespace {

using IntMatrix = Eigen::MatrixXi;

IntMatrix lie(const IntMatrix& a, const IntMatrix& b) { return a * b - b * a; }

// Index pair (i, j) with alpha = eps_i - eps_j for a root of A_l.
std::pair<int, int> sl_indices(const Root& r) {
  int first = -1, last = -1;
  for (int k = 0; k < r.size(); ++k)
    if (r(k) != 0) {
      if (first < 0) first = k;
      last = k;
    }
  return r(first) > 0 ? std::pair{first, last + 1} : std::pair{last + 1, first};
}

// Images of the basis slots in sl_{l+1}, with signs c_alpha chosen along the
// height order so that e_alpha -> c_alpha E_ij is a homomorphism if one exists.
std::vector<IntMatrix> sl_images(const ChevalleyBasis& basis) {
  const RootSystem& rs = basis.system();
  const int n = rs.rank() + 1;
  auto e = [n](int i, int j) {
    IntMatrix m = IntMatrix::Zero(n, n);
    m(i, j) = 1;
    return m;
  };
  std::vector<int> sign(rs.size(), 1);
  for (int xi = rs.rank(); xi < rs.positive_count(); ++xi) {
    for (int i = 0; i < rs.rank(); ++i) {
      auto eta = rs.find(rs.root(xi) - rs.root(i));
      if (!eta) continue;
      auto [a, b] = sl_indices(rs.root(i));
      auto [c, d] = sl_indices(rs.root(*eta));
      auto [p, q] = sl_indices(rs.root(xi));
      IntMatrix br = lie(e(a, b), e(c, d));
      sign[xi] = sign[i] * sign[*eta] * basis.structure_constant(i, *eta) * br(p, q);
      break;
    }
  }
  for (int i = 0; i < rs.positive_count(); ++i) sign[rs.negative(i)] = sign[i];
  std::vector<IntMatrix> out;
  for (int i = 0; i < rs.size(); ++i) {
    auto [a, b] = sl_indices(rs.root(i));
    out.push_back(sign[i] * e(a, b));
  }
  for (int k = 0; k < rs.rank(); ++k) out.push_back(e(k, k) - e(k + 1, k + 1));
  return out;
}

}  // namespace

TEST_CASE("A_l structure constants agree with sl(l+1) matrix units up to signs") {
  for (int l : {1, 2, 3, 4}) {
    ChevalleyBasis basis(RootSystem::build(RootType::A, l));
    CAPTURE(l);
    auto img = sl_images(basis);
    for (int i = 0; i < basis.dimension(); ++i)
      for (int j = 0; j < basis.dimension(); ++j) {
        IntMatrix expect = IntMatrix::Zero(l + 1, l + 1);
        for (const Term& t : basis.bracket(i, j)) expect += t.coeff * img[t.slot];
        REQUIRE(lie(img[i], img[j]) == expect);
      }
  }
}

TEST_CASE("Chevalley basis axioms and Jacobi identity") {
  for (const char* name : {"A2", "A3", "D4", "D5", "E6"}) {
    RootSystem rs = RootSystem::parse(name);
    ChevalleyBasis basis(rs);
    CAPTURE(name);
    CHECK(basis.dimension() == rs.size() + rs.rank());
    for (int a = 0; a < rs.size(); ++a)
      for (int b = 0; b < rs.size(); ++b) {
        int n = basis.structure_constant(a, b);
        CHECK(std::abs(n) == (rs.sum(a, b) ? 1 : 0));
        CHECK(basis.structure_constant(b, a) == -n);
        CHECK(basis.structure_constant(rs.negative(a), rs.negative(b)) == -n);
      }
    // [e_a, e_-a] = h_a and [h_i, e_b] = <b, a_i> e_b
    for (int a = 0; a < rs.size(); ++a) {
      const auto& br = basis.bracket(a, rs.negative(a));
      Root coroot = Root::Zero(rs.rank());
      for (const Term& t : br) {
        REQUIRE(basis.is_cartan_slot(t.slot));
        coroot(t.slot - rs.size()) = t.coeff;
      }
      CHECK(coroot == rs.root(a));
      for (int k = 0; k < rs.rank(); ++k) {
        const auto& hb = basis.bracket(basis.cartan_slot(k), a);
        int expect = rs.pairing(rs.root(a), rs.root(k));
        if (expect == 0) CHECK(hb.empty());
        else CHECK((hb.size() == 1 && hb[0].slot == a && hb[0].coeff == expect));
      }
    }
    // Jacobi on ad matrices: ad [x, y] = [ad x, ad y].
    std::vector<IntMatrix> ad;
    for (int i = 0; i < basis.dimension(); ++i) ad.push_back(basis.ad_matrix(i));
    for (int i = 0; i < basis.dimension(); ++i)
      for (int j = i + 1; j < basis.dimension(); ++j) {
        IntMatrix expect = IntMatrix::Zero(basis.dimension(), basis.dimension());
        for (const Term& t : basis.bracket(i, j)) expect += t.coeff * ad[t.slot];
        REQUIRE(lie(ad[i], ad[j]) == expect);
      }
  }
}

TEST_CASE("extraspecial pairs are positive") {
  for (const char* name : {"A3", "D4", "E6"}) {
    RootSystem rs = RootSystem::parse(name);
    ChevalleyBasis basis(rs);
    for (int xi = rs.rank(); xi < rs.positive_count(); ++xi)
      for (int i = 0; i < rs.rank(); ++i)
        if (auto eta = rs.find(rs.root(xi) - rs.root(i)); eta && rs.is_positive(*eta)) {
          CHECK(basis.structure_constant(i, *eta) == 1);
          break;
        }
  }
}

TEST_CASE("exponential terms are ad^k/k! and nilpotent of order 3") {
  ChevalleyBasis basis(RootSystem::parse("D4"));
  for (int a = 0; a < basis.system().size(); ++a) {
    const auto& terms = basis.exp_terms(a);
    IntMatrix ad = basis.ad_matrix(a);
    REQUIRE(terms.size() == 3);
    CHECK(terms[0] == IntMatrix::Identity(basis.dimension(), basis.dimension()));
    CHECK(terms[1] == ad);
    CHECK(2 * terms[2] == ad * ad);
    CHECK((ad * ad * ad).isZero());
  }
}

TEST_CASE("structure table round trip and the shipped E6 table") {
  ChevalleyBasis a2(RootSystem::parse("A2"));
  std::string text = structure_table_json(a2);
  CHECK_NOTHROW(verify_structure_table(text, a2));
  ChevalleyBasis a3(RootSystem::parse("A3"));
  CHECK_THROWS_AS(verify_structure_table(text, a3), Error);
  std::string tampered = text;
  auto pos = tampered.find("\"checksum\": \"");
  REQUIRE(pos != std::string::npos);
  char& digit = tampered[pos + 13];
  digit = digit == '0' ? '1' : '0';
  try {
    verify_structure_table(tampered, a2);
    FAIL("tampered table accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChecksumMismatch);
  }

  std::ifstream in(std::string(CHEVTWIST_DATA_DIR) + "/e6_structure_constants.json");
  REQUIRE(in);
  std::stringstream buf;
  buf << in.rdbuf();
  ChevalleyBasis e6(RootSystem::parse("E6"));
  CHECK_NOTHROW(verify_structure_table(buf.str(), e6));
}
