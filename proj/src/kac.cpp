#include "superloop/kac.hpp"

#include <map>
#include <stdexcept>

namespace superloop {

namespace {

int popcount(unsigned mask) { return __builtin_popcount(mask); }

// Wedge terms are (mask, operator-on-V0) pairs: x . (mask (x) u) expands as
// sum mask' (x) (op u). Recursion is over the mask only.
struct WedgeTerm {
  unsigned mask;
  Mat op;
};

struct Inducer {
  const ActingAlgebra& A;
  const InductionInput& in;
  std::vector<int> ylist;        // alg indices with zgrade -1, ascending
  std::vector<int> yslot;        // alg index -> slot in ylist or -1
  std::map<std::pair<int, unsigned>, std::vector<WedgeTerm>> memo;

  explicit Inducer(const InductionInput& in_) : A(*in_.alg), in(in_) {
    yslot.assign(A.dim, -1);
    for (int i = 0; i < A.dim; ++i)
      if (A.zgrade[i] == -1) {
        yslot[i] = static_cast<int>(ylist.size());
        ylist.push_back(i);
      }
    if (ylist.size() > 20)
      throw std::invalid_argument("induce_type_i: odd lowering part too large");
    for (int i : ylist)
      for (int j : ylist)
        if (!A.bracket[i][j].empty())
          throw std::invalid_argument("induce_type_i: minus part is not abelian");
  }

  // sign of moving y_slot to its place in front of the ordered product `mask`
  int prepend_sign(unsigned mask, int slot) const {
    return popcount(mask & ((1u << slot) - 1)) % 2 ? -1 : 1;
  }

  Mat v0_op(int x) const {
    if (A.zgrade[x] == 1) return Mat(in.v0_dim, in.v0_dim);
    Mat m = in.action_of(x);
    if (m.rows() != in.v0_dim || m.cols() != in.v0_dim)
      throw std::invalid_argument("induce_type_i: inducing action has wrong size");
    return m;
  }

  const std::vector<WedgeTerm>& act(int x, unsigned mask) {
    auto key = std::make_pair(x, mask);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::vector<WedgeTerm> out;
    const int zg = A.zgrade[x];
    if (zg == -1) {
      const int slot = yslot[x];
      if (!(mask & (1u << slot))) {
        Mat id = Mat::identity(in.v0_dim);
        out.push_back({mask | (1u << slot),
                       prepend_sign(mask, slot) < 0 ? id.scaled(Rat(-1)) : id});
      }
    } else if (zg == 0) {
      // derivation on the wedge factor plus the inducing action
      for (int slot = 0; static_cast<unsigned>(1u << slot) <= mask; ++slot) {
        if (!(mask & (1u << slot))) continue;
        unsigned removed = mask & ~(1u << slot);
        const int rm_sign = prepend_sign(removed, slot);
        for (const auto& [k, c] : A.bracket[x][ylist[slot]]) {
          if (A.zgrade[k] != -1)
            throw std::runtime_error("induce_type_i: [even, minus] escaped the minus part");
          const int kslot = yslot[k];
          if (removed & (1u << kslot)) continue;
          const int in_sign = prepend_sign(removed, kslot);
          Rat coeff = c * Rat(rm_sign * in_sign);
          out.push_back({removed | (1u << kslot), Mat::identity(in.v0_dim).scaled(coeff)});
        }
      }
      out.push_back({mask, v0_op(x)});
    } else {
      // odd raising: peel the lowest wedge factor; x y = [x,y] - y x
      if (mask != 0) {
        int slot = 0;
        while (!(mask & (1u << slot))) ++slot;
        unsigned rest = mask & ~(1u << slot);
        for (const auto& [k, c] : A.bracket[x][ylist[slot]]) {
          for (const auto& t : act(k, rest)) out.push_back({t.mask, t.op.scaled(c)});
        }
        for (const auto& t : act(x, rest)) {
          if (t.mask & (1u << slot)) continue;
          const int sgn = prepend_sign(t.mask, slot);
          out.push_back({t.mask | (1u << slot), t.op.scaled(Rat(-sgn))});
        }
      }
    }

    // merge duplicate masks
    std::map<unsigned, Mat> merged;
    for (const auto& t : out) {
      auto [mit, fresh] = merged.try_emplace(t.mask, t.op);
      if (!fresh) mit->second = mit->second + t.op;
    }
    std::vector<WedgeTerm> compact;
    for (auto& [msk, op] : merged)
      if (!op.is_zero()) compact.push_back({msk, op});
    return memo.emplace(key, std::move(compact)).first->second;
  }
};

}  // namespace

WeightModule induce_type_i(const InductionInput& in) {
  Inducer ctx(in);
  const int nwedge = 1 << ctx.ylist.size();
  const int dim = nwedge * in.v0_dim;

  WeightModule out;
  out.alg = in.alg;
  out.dim = dim;
  const auto& A = *in.alg;

  for (unsigned mask = 0; mask < static_cast<unsigned>(nwedge); ++mask) {
    std::vector<Rat> shift(A.cartan.size(), Rat(0));
    for (std::size_t slot = 0; slot < ctx.ylist.size(); ++slot)
      if (mask & (1u << slot))
        for (std::size_t k = 0; k < A.cartan.size(); ++k)
          shift[k] += A.cartan_eigen[ctx.ylist[slot]][k];
    for (int u = 0; u < in.v0_dim; ++u) {
      Weight w = in.v0_weights[u];
      for (std::size_t k = 0; k < shift.size(); ++k) w.hvals[k] += shift[k];
      out.weights.push_back(w);
      out.parity.push_back((popcount(mask) + in.v0_parity[u]) % 2);
      std::string lbl = "w[";
      for (std::size_t slot = 0; slot < ctx.ylist.size(); ++slot)
        if (mask & (1u << slot)) lbl += A.labels[ctx.ylist[slot]] + "^";
      lbl += "]";
      if (!in.v0_labels.empty()) lbl += in.v0_labels[u];
      out.labels.push_back(lbl);
    }
  }
  out.top = in.v0_top;  // mask 0 block comes first

  for (int x = 0; x < A.dim; ++x) {
    Mat a(dim, dim);
    for (unsigned mask = 0; mask < static_cast<unsigned>(nwedge); ++mask) {
      for (const auto& term : ctx.act(x, mask)) {
        const int col_base = static_cast<int>(mask) * in.v0_dim;
        const int row_base = static_cast<int>(term.mask) * in.v0_dim;
        for (int r = 0; r < term.op.rows(); ++r)
          for (const auto& [c, v] : term.op.row(r)) a.add_at(row_base + r, col_base + c, v);
      }
    }
    out.action.push_back(a);
  }
  return out;
}

WeightModule kac_module(const SuperAlgebra& g, const WeightModule& v0) {
  if (v0.alg != g.acting_even)
    throw std::invalid_argument("kac_module: v0 must be a module for the even part");
  std::vector<int> even_of_full(g.dim(), -1);
  for (std::size_t i = 0; i < g.even_to_full.size(); ++i)
    even_of_full[g.even_to_full[i]] = static_cast<int>(i);

  InductionInput in;
  in.alg = g.acting;
  in.v0_dim = v0.dim;
  in.v0_parity = v0.parity;
  in.v0_labels = v0.labels;
  in.v0_top = v0.top >= 0 ? v0.top : 0;
  in.v0_weights = v0.weights;  // even Cartan order matches the full order
  in.action_of = [&g, &v0, even_of_full](int idx) {
    return v0.action[even_of_full[idx]];
  };
  return induce_type_i(in);
}

}  // namespace superloop
