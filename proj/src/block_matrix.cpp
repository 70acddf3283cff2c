#include "satotate/block_matrix.hpp"

#include <sstream>

#include "satotate/errors.hpp"

namespace satotate {

Block::Block(int level)
    : e{CyclotomicElement(level), CyclotomicElement(level), CyclotomicElement(level),
        CyclotomicElement(level)} {}

Block::Block(const CyclotomicElement& a, const CyclotomicElement& b, const CyclotomicElement& c,
             const CyclotomicElement& d)
    : e{a, b, c, d} {}

Block Block::identity(int level) {
  return diagonal(CyclotomicElement(level, 1), CyclotomicElement(level, 1));
}

Block Block::j(int level) {
  return Block(CyclotomicElement(level), CyclotomicElement(level, 1), CyclotomicElement(level, -1),
               CyclotomicElement(level));
}

Block Block::diagonal(const CyclotomicElement& a, const CyclotomicElement& d) {
  return Block(a, CyclotomicElement(a.level()), CyclotomicElement(a.level()), d);
}

bool Block::is_zero() const {
  for (const auto& x : e) {
    if (!x.is_zero()) return false;
  }
  return true;
}

Block Block::operator*(const Block& o) const {
  Block r(level());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CyclotomicElement acc(level());
      for (int k = 0; k < 2; ++k) {
        const auto& a = e[2 * i + k];
        const auto& b = o.e[2 * k + j];
        if (!a.is_zero() && !b.is_zero()) acc += a * b;
      }
      r.e[2 * i + j] = std::move(acc);
    }
  }
  return r;
}

Block Block::operator+(const Block& o) const {
  Block r = *this;
  for (int i = 0; i < 4; ++i) r.e[i] += o.e[i];
  return r;
}

Block Block::operator-() const {
  Block r = *this;
  for (auto& x : r.e) x = -x;
  return r;
}

Block Block::scaled(const CyclotomicElement& s) const {
  Block r = *this;
  for (auto& x : r.e) {
    if (!x.is_zero()) x = x * s;
  }
  return r;
}

Block Block::transpose() const { return Block(e[0], e[2], e[1], e[3]); }

Block Block::conj_transpose() const {
  return Block(e[0].conj(), e[2].conj(), e[1].conj(), e[3].conj());
}

Block Block::galois(long t) const {
  return Block(e[0].galois(t), e[1].galois(t), e[2].galois(t), e[3].galois(t));
}

std::string block_code(const Block& b) {
  const int n = b.level();
  if (b.is_zero()) return "0";
  for (const char* code : {"I", "-I", "J", "-J", "iJ", "-iJ"}) {
    if (auto c = block_from_code(code, n); c && *c == b) return code;
  }
  return "";
}

std::optional<Block> block_from_code(const std::string& code, int level) {
  if (code == "0") return Block(level);
  if (code == "I") return Block::identity(level);
  if (code == "-I") return -Block::identity(level);
  if (code == "J") return Block::j(level);
  if (code == "-J") return -Block::j(level);
  if (level % 4 == 0) {
    const auto i = CyclotomicElement::imaginary_unit(level);
    if (code == "iJ") return Block::j(level).scaled(i);
    if (code == "-iJ") return Block::j(level).scaled(-i);
  }
  return std::nullopt;
}

BlockUnitaryMatrix::BlockUnitaryMatrix(int g, int level) : g_(g), level_(level) {
  if (g < 1) throw DomainError("block matrix needs g >= 1");
}

BlockUnitaryMatrix BlockUnitaryMatrix::identity(int g, int level) {
  BlockUnitaryMatrix m(g, level);
  for (int i = 0; i < g; ++i) m.set_block(i, i, Block::identity(level));
  return m;
}

BlockUnitaryMatrix BlockUnitaryMatrix::block_diagonal(const std::vector<Block>& blocks) {
  if (blocks.empty()) throw DomainError("empty block list");
  BlockUnitaryMatrix m(static_cast<int>(blocks.size()), blocks[0].level());
  for (std::size_t i = 0; i < blocks.size(); ++i) m.set_block(i, i, blocks[i]);
  return m;
}

BlockUnitaryMatrix BlockUnitaryMatrix::from_entries(
    int g, int level, const std::vector<std::vector<CyclotomicElement>>& rows) {
  if (static_cast<int>(rows.size()) != 2 * g) throw DomainError("row count mismatch");
  BlockUnitaryMatrix m(g, level);
  for (int bi = 0; bi < g; ++bi) {
    for (int bj = 0; bj < g; ++bj) {
      Block b(rows[2 * bi][2 * bj], rows[2 * bi][2 * bj + 1], rows[2 * bi + 1][2 * bj],
              rows[2 * bi + 1][2 * bj + 1]);
      m.set_block(bi, bj, b);
    }
  }
  return m;
}

Block BlockUnitaryMatrix::block(int i, int j) const {
  auto it = blocks_.find({i, j});
  return it == blocks_.end() ? Block(level_) : it->second;
}

void BlockUnitaryMatrix::set_block(int i, int j, const Block& b) {
  if (i < 0 || j < 0 || i >= g_ || j >= g_) throw DomainError("block index out of range");
  if (b.level() != level_) throw DomainError("block level mismatch");
  if (b.is_zero()) {
    blocks_.erase({i, j});
  } else {
    blocks_.insert_or_assign({i, j}, b);
  }
}

CyclotomicElement BlockUnitaryMatrix::entry(int r, int c) const {
  auto it = blocks_.find({r / 2, c / 2});
  if (it == blocks_.end()) return CyclotomicElement(level_);
  return it->second(r % 2, c % 2);
}

std::optional<int> BlockUnitaryMatrix::sole_column(int i) const {
  std::optional<int> col;
  for (auto it = blocks_.lower_bound({i, 0}); it != blocks_.end() && it->first.first == i; ++it) {
    if (col) return std::nullopt;
    col = it->first.second;
  }
  return col;
}

bool BlockUnitaryMatrix::is_block_monomial() const {
  std::vector<int> seen(g_, 0);
  for (int i = 0; i < g_; ++i) {
    auto c = sole_column(i);
    if (!c || seen[*c]++) return false;
  }
  return true;
}

bool BlockUnitaryMatrix::is_block_diagonal() const {
  for (const auto& [ij, b] : blocks_) {
    if (ij.first != ij.second) return false;
  }
  return true;
}

BlockUnitaryMatrix BlockUnitaryMatrix::operator*(const BlockUnitaryMatrix& o) const {
  if (g_ != o.g_ || level_ != o.level_) throw DomainError("block matrix shape mismatch");
  std::map<std::pair<int, int>, Block> acc;
  for (const auto& [ik, a] : blocks_) {
    const int k = ik.second;
    for (auto it = o.blocks_.lower_bound({k, 0}); it != o.blocks_.end() && it->first.first == k;
         ++it) {
      const std::pair<int, int> key{ik.first, it->first.second};
      Block prod = a * it->second;
      auto found = acc.find(key);
      if (found == acc.end()) {
        acc.emplace(key, std::move(prod));
      } else {
        found->second = found->second + prod;
      }
    }
  }
  BlockUnitaryMatrix r(g_, level_);
  for (auto& [key, b] : acc) {
    if (!b.is_zero()) r.blocks_.emplace(key, std::move(b));
  }
  return r;
}

BlockUnitaryMatrix BlockUnitaryMatrix::operator-() const {
  BlockUnitaryMatrix r = *this;
  for (auto& [key, b] : r.blocks_) b = -b;
  return r;
}

BlockUnitaryMatrix BlockUnitaryMatrix::scaled(const CyclotomicElement& s) const {
  BlockUnitaryMatrix r(g_, level_);
  for (const auto& [key, b] : blocks_) r.set_block(key.first, key.second, b.scaled(s));
  return r;
}

BlockUnitaryMatrix BlockUnitaryMatrix::power(long n) const {
  if (n < 0) throw DomainError("negative matrix power");
  BlockUnitaryMatrix result = identity(g_, level_);
  BlockUnitaryMatrix base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

BlockUnitaryMatrix BlockUnitaryMatrix::transpose() const {
  BlockUnitaryMatrix r(g_, level_);
  for (const auto& [key, b] : blocks_) r.blocks_.emplace(std::pair{key.second, key.first}, b.transpose());
  return r;
}

BlockUnitaryMatrix BlockUnitaryMatrix::conj_transpose() const {
  BlockUnitaryMatrix r(g_, level_);
  for (const auto& [key, b] : blocks_) {
    r.blocks_.emplace(std::pair{key.second, key.first}, b.conj_transpose());
  }
  return r;
}

BlockUnitaryMatrix BlockUnitaryMatrix::galois(long t) const {
  BlockUnitaryMatrix r(g_, level_);
  for (const auto& [key, b] : blocks_) r.blocks_.emplace(key, b.galois(t));
  return r;
}

std::optional<BlockUnitaryMatrix> BlockUnitaryMatrix::inverse() const {
  const int n = dimension();
  std::vector<std::vector<CyclotomicElement>> a(n), inv(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      a[r].push_back(entry(r, c));
      inv[r].push_back(CyclotomicElement(level_, r == c ? 1 : 0));
    }
  }
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (!a[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const CyclotomicElement s = a[col][col].inverse();
    for (int c = 0; c < n; ++c) {
      if (!a[col][c].is_zero()) a[col][c] = a[col][c] * s;
      if (!inv[col][c].is_zero()) inv[col][c] = inv[col][c] * s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const CyclotomicElement f = a[r][col];
      for (int c = 0; c < n; ++c) {
        if (!a[col][c].is_zero()) a[r][c] -= f * a[col][c];
        if (!inv[col][c].is_zero()) inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return from_entries(g_, level_, inv);
}

bool BlockUnitaryMatrix::operator==(const BlockUnitaryMatrix& o) const {
  return g_ == o.g_ && level_ == o.level_ && blocks_ == o.blocks_;
}

bool BlockUnitaryMatrix::is_identity() const { return *this == identity(g_, level_); }

bool BlockUnitaryMatrix::is_unitary() const { return (*this * conj_transpose()).is_identity(); }

bool BlockUnitaryMatrix::is_symplectic() const {
  const auto omega = symplectic_form(g_, level_);
  return transpose() * omega * *this == omega;
}

std::string BlockUnitaryMatrix::to_string() const {
  std::ostringstream out;
  for (int i = 0; i < g_; ++i) {
    for (int j = 0; j < g_; ++j) {
      const std::string code = block_code(block(i, j));
      out << (j ? " " : "") << (code.empty() ? "*" : code);
    }
    out << "\n";
  }
  return out.str();
}

BlockUnitaryMatrix symplectic_form(int g, int level) {
  return BlockUnitaryMatrix::block_diagonal(std::vector<Block>(g, Block::j(level)));
}

}  // namespace satotate
