#include "airsat/numerics.hpp"

namespace airsat {

namespace {

void gen_partitions(int remaining, int max_part, std::vector<int>& parts,
                    std::vector<IntegerPartition>& out) {
  if (remaining == 0) {
    IntegerPartition p;
    for (int part : parts) ++p.multiplicities[part];
    out.push_back(std::move(p));
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    parts.push_back(part);
    gen_partitions(remaining - part, part, parts, out);
    parts.pop_back();
  }
}

}  // namespace

std::vector<IntegerPartition> partitions_of(int k) {
  if (k < 0) throw std::domain_error("partitions_of: k must be >= 0");
  std::vector<IntegerPartition> out;
  std::vector<int> parts;
  gen_partitions(k, k, parts, out);
  return out;
}

double binom(int n, int r) {
  if (r < 0 || r > n)
    throw std::domain_error("binom: requires 0 <= r <= n");
  r = std::min(r, n - r);
  double acc = 1.0;
  for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  return acc;
}

}  // namespace airsat
