#include "oracle.hpp"

namespace oracle {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t j) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == j) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i + (j - cur.size()) <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Word> words_up_to(std::size_t m, std::size_t maxlen) {
  std::size_t total = 1, level = 1;
  for (std::size_t l = 1; l <= maxlen; ++l) {
    level *= m;
    total += level;
    if (total > (1u << 22))
      throw std::logic_error("word_sweep: enumeration too large");
  }
  std::vector<Word> out;
  out.reserve(total);
  out.emplace_back();
  std::size_t begin = 0;
  for (std::size_t l = 1; l <= maxlen; ++l) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (std::uint32_t letter = 0; letter < m; ++letter) {
        Word w = out[i];
        w.push_back(letter);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

}  // namespace oracle
