#include "diamond/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "diamond/detail/format.hpp"

namespace diamond {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

enum class Symmetry { General, Symmetric, SkewSymmetric };

struct Header {
  bool coordinate = true;
  bool pattern = false;
  Symmetry symmetry = Symmetry::General;
};

Header parse_header(const std::string& line) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") throw InputError("missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw InputError("unsupported MatrixMarket object: " + object);

  Header h;
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format == "array") {
    h.coordinate = false;
  } else {
    throw InputError("unsupported MatrixMarket format: " + format);
  }
  if (field == "pattern") {
    if (!h.coordinate) throw InputError("pattern field requires coordinate format");
    h.pattern = true;
  } else if (field != "real" && field != "integer" && field != "double") {
    throw InputError("unsupported MatrixMarket field: " + field);
  }
  if (symmetry == "general") {
    h.symmetry = Symmetry::General;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else if (symmetry == "skew-symmetric") {
    h.symmetry = Symmetry::SkewSymmetric;
  } else {
    throw InputError("unsupported MatrixMarket symmetry: " + symmetry);
  }
  return h;
}

// Next line that is neither blank nor a comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos || line[pos] == '%') continue;
    return true;
  }
  return false;
}

Index to_index(long long v, const char* what) {
  if (v < 0 || v > static_cast<long long>(std::numeric_limits<Index>::max()))
    throw InputError(std::string("invalid ") + what);
  return static_cast<Index>(v);
}

void add_entry(std::vector<Triplet>& out, const Header& h, Index r, Index c, double v) {
  out.push_back({r, c, v});
  if (r == c) return;
  if (h.symmetry == Symmetry::Symmetric) {
    out.push_back({c, r, v});
  } else if (h.symmetry == Symmetry::SkewSymmetric) {
    out.push_back({c, r, -v});
  }
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in, Orientation orientation) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty MatrixMarket stream");
  const Header h = parse_header(line);
  if (!next_data_line(in, line)) throw InputError("missing size line");

  std::istringstream size_line(line);
  long long rows_ll = -1, cols_ll = -1, count_ll = -1;
  size_line >> rows_ll >> cols_ll;
  if (h.coordinate) size_line >> count_ll;
  if (!size_line || rows_ll < 0 || cols_ll < 0 || (h.coordinate && count_ll < 0))
    throw InputError("malformed size line: " + line);
  const Index rows = to_index(rows_ll, "row count");
  const Index cols = to_index(cols_ll, "column count");
  if (h.symmetry != Symmetry::General && rows != cols)
    throw InputError("symmetric storage requires a square matrix");

  std::vector<Triplet> entries;
  if (h.coordinate) {
    entries.reserve(static_cast<std::size_t>(count_ll) *
                    (h.symmetry == Symmetry::General ? 1 : 2));
    for (long long e = 0; e < count_ll; ++e) {
      if (!next_data_line(in, line)) throw InputError("fewer entries than declared");
      std::istringstream ss(line);
      long long r = 0, c = 0;
      double v = 1.0;
      ss >> r >> c;
      if (!h.pattern) ss >> v;
      if (!ss) throw InputError("malformed entry line: " + line);
      if (r < 1 || c < 1 || r > rows_ll || c > cols_ll)
        throw InputError("entry index out of declared bounds: " + line);
      add_entry(entries, h, static_cast<Index>(r - 1), static_cast<Index>(c - 1), v);
    }
  } else {
    // Column-major listing; symmetric variants list only the lower triangle.
    for (Index c = 0; c < cols; ++c) {
      const Index first = h.symmetry == Symmetry::General        ? 0
                          : h.symmetry == Symmetry::Symmetric     ? c
                                                                   : c + 1;
      for (Index r = first; r < rows; ++r) {
        if (!next_data_line(in, line)) throw InputError("fewer array values than declared");
        std::istringstream ss(line);
        double v = 0.0;
        if (!(ss >> v)) throw InputError("malformed array value: " + line);
        add_entry(entries, h, r, c, v);
      }
    }
  }

  SparseMatrix m = SparseMatrix::from_triplets(rows, cols, std::move(entries));
  return orientation == Orientation::ColMajor ? m.transposed() : m;
}

SparseMatrix load_matrix_market(const std::filesystem::path& path, Orientation orientation) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return read_matrix_market(in, orientation);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_matrix_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& t : m.triplets())
    out << t.row + 1 << ' ' << t.col + 1 << ' ' << detail::format_double(t.value) << '\n';
}

void save_matrix_market(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_matrix_market(out, m);
}

namespace {

constexpr char kCacheMagic[8] = {'D', 'M', 'D', 'C', 'A', 'C', 'H', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

template <typename T>
void write_pod(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void write_array(std::ostream& out, std::span<const T> data) {
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size_bytes()));
}

template <typename T>
T read_pod(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) throw InputError("truncated cache file");
  return v;
}

template <typename T>
std::vector<T> read_array(std::istream& in, std::size_t count) {
  std::vector<T> v(count);
  if (!in.read(reinterpret_cast<char*>(v.data()),
               static_cast<std::streamsize>(count * sizeof(T))))
    throw InputError("truncated cache file");
  return v;
}

}  // namespace

void save_binary_cache(const std::filesystem::path& path, const SparseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out.write(kCacheMagic, sizeof(kCacheMagic));
  write_pod(out, kCacheVersion);
  write_pod<std::uint64_t>(out, m.rows());
  write_pod<std::uint64_t>(out, m.cols());
  write_pod<std::uint64_t>(out, m.nnz());
  write_array(out, m.row_ptr());
  write_array(out, m.row_cols());
  write_array(out, m.row_vals());
  write_array(out, m.col_ptr());
  write_array(out, m.col_rows());
  write_array(out, m.col_vals());
}

SparseMatrix load_binary_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  char magic[sizeof(kCacheMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0)
    throw InputError(path.string() + ": not a matrix cache file");
  if (read_pod<std::uint32_t>(in) != kCacheVersion)
    throw InputError(path.string() + ": unsupported cache version");
  const auto rows = read_pod<std::uint64_t>(in);
  const auto cols = read_pod<std::uint64_t>(in);
  const auto nnz = read_pod<std::uint64_t>(in);
  if (rows > std::numeric_limits<Index>::max() || cols > std::numeric_limits<Index>::max())
    throw InputError(path.string() + ": dimensions too large");

  const auto row_ptr = read_array<std::size_t>(in, rows + 1);
  const auto row_cols = read_array<Index>(in, nnz);
  const auto row_vals = read_array<double>(in, nnz);
  const auto col_ptr = read_array<std::size_t>(in, cols + 1);
  const auto col_rows = read_array<Index>(in, nnz);
  const auto col_vals = read_array<double>(in, nnz);

  if (row_ptr.front() != 0 || row_ptr.back() != nnz)
    throw InputError(path.string() + ": corrupt row pointers");
  std::vector<Triplet> entries;
  entries.reserve(nnz);
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (row_ptr[r] > row_ptr[r + 1] || row_ptr[r + 1] > nnz)
      throw InputError(path.string() + ": corrupt row pointers");
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
      entries.push_back({static_cast<Index>(r), row_cols[p], row_vals[p]});
  }
  SparseMatrix m = SparseMatrix::from_triplets(static_cast<Index>(rows),
                                               static_cast<Index>(cols), std::move(entries));
  const auto same = [](auto stored, auto rebuilt) {
    return std::equal(stored.begin(), stored.end(), rebuilt.begin(), rebuilt.end());
  };
  if (!same(std::span<const std::size_t>(col_ptr), m.col_ptr()) ||
      !same(std::span<const Index>(col_rows), m.col_rows()) ||
      !same(std::span<const double>(col_vals), m.col_vals()))
    throw InputError(path.string() + ": column layout disagrees with row layout");
  return m;
}

}  // namespace diamond
