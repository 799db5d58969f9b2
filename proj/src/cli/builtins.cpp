#include "syzlab/cli/builtins.hpp"

namespace syz::cli {

namespace {

// Betti systems use j = 0 factors so the matrices split along the mu_6 grading.
constexpr const char* kKummerQuartic = R"(name = "kummer-quartic"
field = 10007
kind = "kummer"
cap = 5
curves = [{ a = 0, b = 7 }, { a = 0, b = 11 }]
degrees = [1, 1]

[[tasks]]
type = "hilbert"
k_max = 4
expect = { values = [4, 10, 20, 34] }

[[tasks]]
type = "ideal"
k_min = 2
k_max = 4
expect = { dims = { 2 = 0, 3 = 0, 4 = 1 } }

[[tasks]]
type = "generators"
k_max = 5
expect = { degrees = { 4 = 1 }, max_max_degree = 4 }

[[tasks]]
type = "betti"
p_max = 1
q_max = 5
expect = { nonzero = [[0, 0, 1], [1, 4, 1]] }

[[tasks]]
type = "npr"
p = 1
r = 2
expect = { state = "holds" }
)";

constexpr const char* kThmAp0n2 = R"(name = "thmA-p0-n2"
field = 10007
kind = "kummer"
cap = 5
curves = [{ a = 0, b = 7 }, { a = 0, b = 11 }]
degrees = [2, 2]

[[tasks]]
type = "hnormality"
k_min = 2
k_max = 5
expect = { all = true, ranks = { 2 = 34, 3 = 74, 4 = 130, 5 = 202 }, sym_dims = { 2 = 55, 3 = 220, 4 = 715, 5 = 2002 } }

[[tasks]]
type = "npr"
p = 0
r = 0
expect = { state = "holds" }
)";

constexpr const char* kThmAp1n3 = R"(name = "thmA-p1-n3"
field = 10007
kind = "kummer"
cap = 4
curves = [{ a = 0, b = 7 }, { a = 0, b = 11 }]
degrees = [3, 3]

[[tasks]]
type = "npr"
p = 1
r = 0
expect = { state = "holds", stable = true }

[[tasks]]
type = "hilbert"
k_max = 4
expect = { values = [20, 74, 164, 290] }

[[tasks]]
type = "ideal"
k_min = 2
k_max = 3
expect = { dims = { 2 = 136, 3 = 1376 }, sym_dims = { 2 = 210, 3 = 1540 }, generated_from_below = { 3 = true } }

[[tasks]]
type = "betti"
p_max = 2
q_max = 4
expect = { nonzero = [[0, 0, 1], [1, 2, 136], [2, 3, 1344]] }
)";

constexpr const char* kThmDb = R"(name = "thmD-b"
field = 10007
kind = "kummer"
cap = 4
curves = [{ a = 0, b = 7 }, { a = 0, b = 11 }]
degrees = [2, 2]

[[tasks]]
type = "generators"
k_max = 4
expect = { subset_degree_set = [2, 3] }

[[tasks]]
type = "ideal"
k_min = 2
k_max = 4
expect = { dims = { 2 = 21, 3 = 146, 4 = 585 }, generated_from_below = { 3 = true, 4 = true } }
)";

constexpr const char* kGreenD3 = R"(name = "green-d3"
field = 10007
kind = "ambient"
cap = 5
curves = [{ a = 0, b = 7 }]
degrees = [3]

[[tasks]]
type = "npr"
p = 0
expect = { state = "holds" }

[[tasks]]
type = "npr"
p = 1
expect = { state = "fails", witness = [1, 1], witness_beta = 1 }

[[tasks]]
type = "betti"
p_max = 2
q_max = 5
expect = { nonzero = [[0, 0, 1], [1, 3, 1]] }
)";

constexpr const char* kGreenD4 = R"(name = "green-d4"
field = 10007
kind = "ambient"
cap = 5
curves = [{ a = 0, b = 7 }]
degrees = [4]

[[tasks]]
type = "npr"
p = 1
expect = { state = "holds" }

[[tasks]]
type = "npr"
p = 2
expect = { state = "fails", witness = [2, 1], witness_beta = 1 }

[[tasks]]
type = "betti"
p_max = 3
q_max = 5
expect = { nonzero = [[0, 0, 1], [1, 2, 2], [2, 4, 1]] }
)";

constexpr const char* kGreenD5 = R"(name = "green-d5"
field = 10007
kind = "ambient"
cap = 5
curves = [{ a = 0, b = 7 }]
degrees = [5]

[[tasks]]
type = "npr"
p = 2
expect = { state = "holds" }

[[tasks]]
type = "npr"
p = 3
expect = { state = "fails", witness = [3, 1], witness_beta = 1 }

[[tasks]]
type = "betti"
p_max = 4
q_max = 5
expect = { nonzero = [[0, 0, 1], [1, 2, 5], [2, 3, 5], [3, 5, 1]] }
)";

constexpr const char* kProp31 = R"(name = "prop31-sweep"
field = 11
kind = "kummer"
curves = [{ a = 0, b = 1 }, { a = 0, b = 2 }]
degrees = [1, 1]

[[tasks]]
type = "sweep"
probe = "mplus"
n = 1
h = 3
mode = "exhaustive"
expect = { failure_count = 0 }

[[tasks]]
type = "sweep"
probe = "mplus"
n = 1
h = 4
mode = "exhaustive"
expect = { failure_count = 0 }
)";

constexpr const char* kThm34 = R"(name = "thm34-equiv"
field = 11
kind = "kummer"
curves = [{ a = 0, b = 1 }, { a = 0, b = 2 }]
degrees = [1, 1]

[[tasks]]
type = "sweep"
probe = "equiv"
mode = "exhaustive"
expect = { mismatches = 0, contains_zero = true }

[[tasks]]
type = "sweep"
probe = "equiv"
degrees = [2, 2]
q = [31]
mode = "sampled"
samples = 20
seed = 34
expect = { mismatches = 0 }
)";

// C0 = 0: the first exhaustive run found no failing twist at q = 11, 17, 23.
constexpr const char* kThm36 = R"(name = "thm36-codim"
field = 11
kind = "kummer"
curves = [{ a = 0, b = 1 }, { a = 0, b = 2 }]
degrees = [2, 2]

[[tasks]]
type = "sweep"
probe = "mplus"
n = 1
h = 2
q = [11, 17, 23]
mode = "exhaustive"
expect = { max_failure_count = 0, bounded_growth = true }

[[tasks]]
type = "sweep"
probe = "mplus"
degrees = [1, 1]
n = 1
h = 2
q = [11]
mode = "exhaustive"
expect = { contains_zero = true, min_failure_count = 1 }
)";

constexpr const char* kIt0 = R"(name = "it0-desk"
field = 11
kind = "kummer"
curves = [{ a = 0, b = 1 }, { a = 0, b = 2 }]
degrees = [1, 1]

[[tasks]]
type = "it0"
n = 1
p = 1
m = 3
mode = "exhaustive"
expect = { inconclusive = 0 }

[[tasks]]
type = "it0"
n = 1
p = 2
m = 5
q = [31]
mode = "sampled"
samples = 20
seed = 2024
expect = { inconclusive = 0, total = 20 }

[[tasks]]
type = "it0"
degrees = [2, 2]
n = 1
p = 1
m = 2
mode = "exhaustive"
expect = { max_inconclusive = 0 }
)";

constexpr const char* kLinkage = R"(name = "reduction-linkage"
field = 11
kind = "kummer"
curves = [{ a = 0, b = 1 }, { a = 0, b = 2 }]
degrees = [1, 1]

[[tasks]]
type = "linkage"
mode = "exhaustive"
cells = [[1, 1, 3], [1, 2, 5], [1, 1, 4], [1, 2, 6], [3, 1, 4], [3, 1, 10], [1, 1, 2]]
expect = { violations = 0, min_linked = 4 }
)";

}  // namespace

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> all = {
      {"kummer-quartic", {1}, "(1,1) Kummer system: Hilbert values, ideal, generators, Betti table", kKummerQuartic},
      {"thmA-p0-n2", {2}, "projective normality of A^2 on the (1,1) Kummer", kThmAp0n2},
      {"thmA-p1-n3", {3}, "N_1 for A^3 on the (1,1) Kummer", kThmAp1n3},
      {"thmD-b", {4}, "(2,2) Kummer: generation by quadrics and cubics", kThmDb},
      {"green-d3", {5}, "plane cubic: N_0 holds, N_1 fails", kGreenD3},
      {"green-d4", {5}, "elliptic quartic: N_1 holds, N_2 fails", kGreenD4},
      {"green-d5", {5}, "elliptic quintic: N_2 holds, N_3 fails", kGreenD5},
      {"prop31-sweep", {6}, "m+ surjective for h >= 3 on every rational twist", kProp31},
      {"thm34-equiv", {7}, "m and m+ verdicts agree", kThm34},
      {"thm36-codim", {8}, "bounded failure counts of m+ at h = 2", kThm36},
      {"it0-desk", {9}, "I.T.(0) certification chains", kIt0},
      {"reduction-linkage", {10}, "certified kernel bundles against Kummer Koszul cells", kLinkage},
  };
  return all;
}

const Builtin* find_builtin(const std::string& name) {
  for (const auto& b : builtins())
    if (b.name == name) return &b;
  return nullptr;
}

}  // namespace syz::cli
