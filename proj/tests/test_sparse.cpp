#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "diamond/matrix_market.hpp"
#include "diamond/sparse_matrix.hpp"
#include "support/oracles.hpp"

using namespace diamond;

namespace {

SparseMatrix parse(const std::string& text, Orientation o = Orientation::RowMajor) {
  std::istringstream in(text);
  return read_matrix_market(in, o);
}

void check_layouts_agree(const SparseMatrix& m) {
  std::vector<std::tuple<Index, Index, double>> by_row, by_col;
  for (Index r = 0; r < m.rows(); ++r)
    for (std::size_t p = m.row_ptr()[r]; p < m.row_ptr()[r + 1]; ++p)
      by_row.emplace_back(r, m.row_cols()[p], m.row_vals()[p]);
  for (Index c = 0; c < m.cols(); ++c)
    for (std::size_t p = m.col_ptr()[c]; p < m.col_ptr()[c + 1]; ++p)
      by_col.emplace_back(m.col_rows()[p], c, m.col_vals()[p]);
  std::sort(by_col.begin(), by_col.end());
  CHECK(by_row == by_col);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("diamond_test_" + name);
}

}  // namespace

TEST_CASE("2x2 coordinate file gives the expected norms") {
  const auto m = parse(
      "%%MatrixMarket matrix coordinate real general\n"
      "% comment\n"
      "2 2 3\n"
      "1 1 1\n2 1 1\n2 2 1\n");
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m.col_norms()[0] == 2);
  CHECK(m.col_norms()[1] == 1);
  CHECK(m.row_norms()[0] == 1);
  CHECK(m.row_norms()[1] == 2);
  CHECK(m.row_degree(1) == 2);
  CHECK(m.col_degree(1) == 1);
  CHECK(m.is_binary());
  check_layouts_agree(m);
}

TEST_CASE("empty coordinate file is the zero matrix") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n3 3 0\n");
  CHECK(m.nnz() == 0);
  for (Index k = 0; k < 3; ++k) {
    CHECK(m.row_norms()[k] == 0);
    CHECK(m.col_norms()[k] == 0);
    CHECK(m.row_degree(k) == 0);
    CHECK(m.col_degree(k) == 0);
  }
  CHECK(m.norm1() == 0);
}

TEST_CASE("symmetric storage is expanded") {
  const auto m = parse("%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 5\n");
  CHECK(m.value_at(1, 0) == 5);
  CHECK(m.value_at(0, 1) == 5);
  CHECK(m.nnz() == 2);
  CHECK(m.is_symmetric());
}

TEST_CASE("skew-symmetric storage negates the mirror") {
  const auto m = parse("%%MatrixMarket matrix coordinate real skew-symmetric\n3 3 1\n3 1 2\n");
  CHECK(m.value_at(2, 0) == 2);
  CHECK(m.value_at(0, 2) == -2);
  CHECK_FALSE(m.is_symmetric());
  CHECK_FALSE(m.is_nonnegative());
}

TEST_CASE("pattern and integer fields") {
  const auto p = parse("%%MatrixMarket matrix coordinate pattern general\n2 3 2\n1 3\n2 1\n");
  CHECK(p.value_at(0, 2) == 1);
  CHECK(p.value_at(1, 0) == 1);
  CHECK(p.is_binary());
  const auto i = parse("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 -4\n");
  CHECK(i.value_at(0, 0) == -4);
}

TEST_CASE("array format is column-major and drops zeros") {
  const auto m = parse("%%MatrixMarket matrix array real general\n2 2\n1\n0\n3\n4\n");
  CHECK(m.value_at(0, 0) == 1);
  CHECK(m.value_at(1, 0) == 0);
  CHECK(m.value_at(0, 1) == 3);
  CHECK(m.value_at(1, 1) == 4);
  CHECK(m.nnz() == 3);
}

TEST_CASE("explicit zeros are dropped") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 0\n2 2 3\n");
  CHECK(m.nnz() == 1);
  CHECK(m.row_degree(0) == 0);
}

TEST_CASE("column-major orientation transposes") {
  const auto m = parse("%%MatrixMarket matrix coordinate real general\n2 3 1\n1 3 7\n",
                       Orientation::ColMajor);
  CHECK(m.rows() == 3);
  CHECK(m.cols() == 2);
  CHECK(m.value_at(2, 0) == 7);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n"),
                  InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"),
                  InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"),
                  InputError);
  CHECK_THROWS_AS(parse("%MatrixMarket matrix coordinate real general\n2 2 0\n"), InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate complex general\n2 2 0\n"),
                  InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 x 0\n"), InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 abc\n"),
                  InputError);
  CHECK_THROWS_AS(parse("%%MatrixMarket matrix coordinate real symmetric\n2 3 0\n"), InputError);
  CHECK_THROWS_AS(parse(""), InputError);
  CHECK_THROWS_AS(load_matrix_market("/nonexistent/file.mtx"), InputError);
}

TEST_CASE("from_triplets validates coordinates and values") {
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, 0, 1}, {0, 0, 2}}), InputError);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{2, 0, 1}}), InputError);
  CHECK_THROWS_AS(SparseMatrix::from_triplets(2, 2, {{0, 0, std::nan("")}}), InputError);
  CHECK_THROWS_AS(SparseMatrix::from_dense(2, 2, std::vector<double>{1, 2, 3}), InputError);
  const auto m = SparseMatrix::from_triplets(3, 2, {{2, 1, -2}, {0, 0, 1}, {1, 1, 0}});
  CHECK(m.nnz() == 2);
  CHECK(m.max_abs() == 2);
  CHECK_FALSE(m.is_nonnegative());
  CHECK_FALSE(m.is_binary());
}

TEST_CASE("norm identities hold on random matrices") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto m = oracle::integer_sparse(12, 9, 0.4, 5, false, seed);
    double rows = 0, cols = 0;
    for (double v : m.row_norms()) rows += v;
    for (double v : m.col_norms()) cols += v;
    CHECK(rows == doctest::Approx(m.norm1()));
    CHECK(cols == doctest::Approx(m.norm1()));
    check_layouts_agree(m);
  }
}

TEST_CASE("matrix market write then read round trips") {
  const auto m = oracle::signed_dense(5, 4, 3);
  std::stringstream buf;
  write_matrix_market(buf, m);
  const auto back = read_matrix_market(buf);
  REQUIRE(back.nnz() == m.nnz());
  CHECK(back.content_hash() == m.content_hash());
  CHECK(back.is_symmetric() == m.is_symmetric());
  CHECK(back.is_nonnegative() == m.is_nonnegative());
  for (Index r = 0; r < 5; ++r) CHECK(back.row_norms()[r] == m.row_norms()[r]);

  const auto path = temp_file("roundtrip.mtx");
  save_matrix_market(path, m);
  CHECK(load_matrix_market(path).content_hash() == m.content_hash());
  std::filesystem::remove(path);
}

TEST_CASE("binary cache round trips and rejects foreign files") {
  const auto m = oracle::integer_sparse(20, 15, 0.3, 4, false, 9);
  const auto path = temp_file("cache.bin");
  save_binary_cache(path, m);
  const auto back = load_binary_cache(path);
  CHECK(back.content_hash() == m.content_hash());
  CHECK(back.rows() == m.rows());
  CHECK(back.cols() == m.cols());
  check_layouts_agree(back);

  {
    std::ofstream out(path, std::ios::binary);
    out << "not a cache";
  }
  CHECK_THROWS_AS(load_binary_cache(path), InputError);
  std::filesystem::remove(path);
}

TEST_CASE("validate_pair checks shapes and flags") {
  auto a = std::make_shared<const SparseMatrix>(oracle::dense(2, 3, {1, 0, 1, 0, 1, 1}));
  auto b = std::make_shared<const SparseMatrix>(oracle::dense(2, 4, {1, 1, 1, 1, 0, 1, 0, 1}));
  const auto pair = validate_pair(a, b);
  CHECK(pair.shared_dim() == 2);
  CHECK(pair.m() == 3);
  CHECK(pair.n() == 4);
  CHECK_FALSE(pair.is_gram());

  auto c = std::make_shared<const SparseMatrix>(oracle::dense(3, 4, std::vector<double>(12, 1)));
  CHECK_THROWS_AS(validate_pair(a, c), DimensionMismatch);

  auto s = std::make_shared<const SparseMatrix>(oracle::dense(3, 3, {2, 1, 0, 1, 0, 4, 0, 4, 1}));
  const auto sym = validate_pair(s, s);
  CHECK(sym.is_gram());
  CHECK(sym.is_symmetric_square());
}

TEST_CASE("column_dot examples") {
  const auto a = oracle::dense(2, 2, {1, 0, 1, 1});
  const auto b = oracle::dense(2, 3, {1, 1, 0, 0, 1, 1});
  CHECK(column_dot(a, b, 0, 1) == 2);
  CHECK(column_dot(a, b, 1, 0) == 0);
  const auto z = SparseMatrix::from_triplets(2, 1, {});
  CHECK(column_dot(a, z, 0, 0) == 0);
  CHECK_THROWS_AS(column_dot(a, b, 2, 0), std::out_of_range);
  CHECK_THROWS_AS(column_dot(a, b, 0, 3), std::out_of_range);
}

TEST_CASE("column_dot matches dense brute force") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto pair = oracle::make_pair(oracle::signed_dense(10, 10, seed),
                                        oracle::signed_dense(10, 10, seed + 100));
    const auto c = oracle::product(pair);
    for (Index i = 0; i < 10; ++i)
      for (Index j = 0; j < 10; ++j) {
        const double got = column_dot(pair.a(), pair.b(), i, j);
        CHECK(std::fabs(got - c[i][j]) <= 1e-14 * (1 + std::fabs(c[i][j])) * 10);
      }
  }
}

TEST_CASE("transpose and column extraction") {
  const auto m = oracle::integer_sparse(6, 4, 0.5, 3, false, 4);
  const auto t = m.transposed();
  for (Index r = 0; r < 6; ++r)
    for (Index c = 0; c < 4; ++c) CHECK(t.value_at(c, r) == m.value_at(r, c));
  const auto col = m.column(2);
  CHECK(col.cols() == 1);
  for (Index r = 0; r < 6; ++r) CHECK(col.value_at(r, 0) == m.value_at(r, 2));
  CHECK_THROWS(m.column(4));
}
