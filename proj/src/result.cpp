#include "ssls/result.hpp"

#include <algorithm>

namespace ssls {

SelectionResult make_result(const ScoreTable& table, std::string algo, std::vector<int> members, double omega) {
  SelectionResult r;
  r.algo = std::move(algo);
  std::sort(members.begin(), members.end());
  r.members = members;
  for (int m : members) r.locations.push_back(table.context().candidate(m));
  if (!members.empty()) r.score = set_score(table, members, omega);
  return r;
}

bool lexicographically_smaller(const ScoreTable& table, std::vector<int> a, std::vector<int> b) {
  auto ids = [&](std::vector<int>& v) {
    std::vector<LocationId> out;
    for (int i : v) out.push_back(table.context().candidate(i));
    std::sort(out.begin(), out.end());
    return out;
  };
  return ids(a) < ids(b);
}

}  // namespace ssls
