#include "iwz/lattice.hpp"

namespace iwz {

namespace {

struct Row {
  std::vector<Z> v;
  std::vector<Z> c;
};

void axpy(Row& dst, const Z& q, const Row& src) {
  for (size_t i = 0; i < dst.v.size(); ++i) dst.v[i] -= q * src.v[i];
  for (size_t i = 0; i < dst.c.size(); ++i) dst.c[i] -= q * src.c[i];
}

}  // namespace

Echelon echelon(const std::vector<std::vector<Z>>& gens, int n, bool track) {
  std::vector<Row> active;
  for (size_t i = 0; i < gens.size(); ++i) {
    Row r;
    r.v = gens[i];
    if (track) {
      r.c.assign(gens.size(), 0);
      r.c[i] = 1;
    }
    active.push_back(std::move(r));
  }
  std::vector<Row> out(n);
  for (int k = n - 1; k >= 0; --k) {
    while (true) {
      int piv = -1;
      for (size_t i = 0; i < active.size(); ++i)
        if (active[i].v[k] != 0 && (piv < 0 || abs(active[i].v[k]) < abs(active[piv].v[k])))
          piv = static_cast<int>(i);
      if (piv < 0) fail("DomainError", "lattice is not of full rank");
      bool clean = true;
      for (size_t i = 0; i < active.size(); ++i) {
        if (static_cast<int>(i) == piv || active[i].v[k] == 0) continue;
        Z q = active[i].v[k] / active[piv].v[k];
        axpy(active[i], q, active[piv]);
        if (active[i].v[k] != 0) clean = false;
      }
      if (clean) {
        Row p = active[piv];
        active.erase(active.begin() + piv);
        if (p.v[k] < 0) {
          for (auto& x : p.v) x = -x;
          for (auto& x : p.c) x = -x;
        }
        out[k] = std::move(p);
        break;
      }
    }
  }
  for (int j = 1; j < n; ++j)
    for (int k = j - 1; k >= 0; --k) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), out[j].v[k].get_mpz_t(), out[k].v[k].get_mpz_t());
      if (q != 0) axpy(out[j], q, out[k]);
    }
  Echelon e;
  for (auto& r : out) {
    e.rows.push_back(r.v);
    e.coef.push_back(r.c);
  }
  return e;
}

bool solve_in_span(const Echelon& e, const std::vector<Z>& target, std::vector<Z>& combo) {
  int n = static_cast<int>(e.rows.size());
  std::vector<Z> t = target;
  size_t m = e.coef.empty() ? 0 : e.coef[0].size();
  combo.assign(m, 0);
  for (int k = n - 1; k >= 0; --k) {
    if (t[k] % e.rows[k][k] != 0) return false;
    Z q = t[k] / e.rows[k][k];
    for (int i = 0; i <= k; ++i) t[i] -= q * e.rows[k][i];
    for (size_t i = 0; i < m; ++i) combo[i] += q * e.coef[k][i];
  }
  return true;
}

}  // namespace iwz
