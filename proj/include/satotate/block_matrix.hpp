#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "satotate/cyclotomic.hpp"

namespace satotate {

// 2x2 matrix over Q(zeta_N), row-major.
struct Block {
  std::array<CyclotomicElement, 4> e;

  explicit Block(int level);
  Block(const CyclotomicElement& a, const CyclotomicElement& b, const CyclotomicElement& c,
        const CyclotomicElement& d);

  static Block identity(int level);
  static Block j(int level);  // [[0,1],[-1,0]]
  static Block diagonal(const CyclotomicElement& a, const CyclotomicElement& d);

  int level() const { return e[0].level(); }
  const CyclotomicElement& operator()(int r, int c) const { return e[2 * r + c]; }
  bool is_zero() const;

  Block operator*(const Block& o) const;
  Block operator+(const Block& o) const;
  Block operator-() const;
  Block scaled(const CyclotomicElement& s) const;
  Block transpose() const;
  Block conj_transpose() const;
  Block galois(long t) const;
  bool operator==(const Block& o) const { return e == o.e; }
  bool operator!=(const Block& o) const { return !(*this == o); }
};

// Short names used in serialized output; "" when the block is not one of them.
std::string block_code(const Block& b);
std::optional<Block> block_from_code(const std::string& code, int level);

// 2g x 2g matrix made of g x g blocks. Zero blocks are not stored.
class BlockUnitaryMatrix {
 public:
  BlockUnitaryMatrix(int g, int level);
  static BlockUnitaryMatrix identity(int g, int level);
  static BlockUnitaryMatrix block_diagonal(const std::vector<Block>& blocks);
  // 2x2 over scalars, for entry-level access.
  static BlockUnitaryMatrix from_entries(int g, int level,
                                         const std::vector<std::vector<CyclotomicElement>>& rows);

  int g() const { return g_; }
  int level() const { return level_; }
  int dimension() const { return 2 * g_; }

  Block block(int i, int j) const;
  void set_block(int i, int j, const Block& b);
  const std::map<std::pair<int, int>, Block>& nonzero_blocks() const { return blocks_; }
  CyclotomicElement entry(int r, int c) const;
  // Column of the unique nonzero block in block-row i, if there is exactly one.
  std::optional<int> sole_column(int i) const;
  bool is_block_monomial() const;
  bool is_block_diagonal() const;

  BlockUnitaryMatrix operator*(const BlockUnitaryMatrix& o) const;
  BlockUnitaryMatrix operator-() const;
  BlockUnitaryMatrix scaled(const CyclotomicElement& s) const;
  BlockUnitaryMatrix power(long n) const;  // n >= 0
  BlockUnitaryMatrix transpose() const;
  BlockUnitaryMatrix conj_transpose() const;
  BlockUnitaryMatrix galois(long t) const;
  // Exact Gauss-Jordan; nullopt when singular.
  std::optional<BlockUnitaryMatrix> inverse() const;

  bool operator==(const BlockUnitaryMatrix& o) const;
  bool operator!=(const BlockUnitaryMatrix& o) const { return !(*this == o); }

  bool is_identity() const;
  bool is_unitary() const;
  // transpose(M) * diag(J,...,J) * M == diag(J,...,J)
  bool is_symplectic() const;

  std::string to_string() const;

 private:
  int g_;
  int level_;
  std::map<std::pair<int, int>, Block> blocks_;
};

BlockUnitaryMatrix symplectic_form(int g, int level);

}  // namespace satotate
