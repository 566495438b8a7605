#include "klr/piecewise.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "klr/nilhecke.hpp"

namespace klr {

namespace {

RootVector prefix_root(const CartanDatum& datum, const Sequence& nu, int len) {
  RootVector r{std::vector<int>(datum.rank(), 0)};
  for (int p = 0; p < len; ++p) r.coeffs[nu[p]] += 1;
  return r;
}

std::uint16_t source_of(const Sequence& nu) {
  RootVector alpha{std::vector<int>()};
  int rank = nu.empty() ? 0 : *std::max_element(nu.begin(), nu.end()) + 1;
  alpha.coeffs.assign(rank, 0);
  for (int v : nu) alpha.coeffs[v] += 1;
  auto seqs = enumerate_sequences(alpha);
  auto it = std::find(seqs.begin(), seqs.end(), nu);
  return static_cast<std::uint16_t>(it - seqs.begin());
}

void append_x(GenWord& g, int pos, int power) {
  for (int t = 0; t < power; ++t) g.letters.push_back({GenLetter::Kind::X, pos});
}

void append_interval(GenWord& g, int u, int v) {
  for (const NhLetter& l : interval_tau_word(u, v)) g.letters.push_back({GenLetter::Kind::Tau, l.index});
  for (int j = u + 1; j <= v; ++j) append_x(g, j, j - u);
}

/// Compositions of [first, last] into consecutive intervals, as the list of
/// interval starts followed by last + 1.
std::vector<std::vector<int>> interval_compositions(int first, int last) {
  std::vector<std::vector<int>> out;
  int len = last - first + 1;
  if (len <= 0) return out;
  for (unsigned mask = 0; mask < (1u << (len - 1)); ++mask) {
    std::vector<int> a{first};
    for (int p = 1; p < len; ++p)
      if (mask & (1u << (p - 1))) a.push_back(first + p);
    a.push_back(last + 1);
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void require_pd(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  if (!is_piecewise_dominant(nu, lambda, datum))
    throw PiecewiseError(PiecewiseError::Kind::NotPiecewiseDominant, "sequence " + sequence_to_string(nu) + " is not piecewise dominant");
}

std::vector<SparseVec> images(const CyclotomicAlgebra& a, const std::vector<GenWord>& words) {
  std::vector<SparseVec> out;
  out.reserve(words.size());
  for (const GenWord& g : words) out.push_back(a.word_image(g));
  return out;
}

bool same_ranks(const std::map<int, std::size_t>& ranks, const GradedDims& dims) {
  for (const auto& [d, r] : ranks)
    if (dims.get(d) != r) return false;
  for (int d : dims.support()) {
    auto it = ranks.find(d);
    if (it == ranks.end() || it->second != dims.get(d)) return false;
  }
  return true;
}

std::string ranks_to_string(const std::map<int, std::size_t>& ranks) {
  GradedDims g;
  for (const auto& [d, r] : ranks)
    if (r) g.set(d, r);
  return g.to_string();
}

/// v lies in the span of targets modulo [R, R].
bool in_cocenter_span(const CocenterSpace& tr, const std::vector<SparseVec>& targets, const SparseVec& v) {
  auto pv = tr.project(v);
  if (pv.coords.empty()) return true;
  EchelonBasis span(tr.algebra().field);
  for (const SparseVec& t : targets) {
    auto pt = tr.project(t);
    if (!pt.coords.empty() && pt.degree == pv.degree) span.insert(pt.coords);
  }
  return span.contains(pv.coords);
}

long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

BlockDecomposition block_decompose(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  BlockDecomposition d;
  d.c.push_back(0);
  for (std::size_t p = 0; p < nu.size(); ++p) {
    if (p == 0 || nu[p] != nu[p - 1]) {
      d.values.push_back(nu[p]);
      d.sizes.push_back(0);
      d.c.push_back(d.c.back());
    }
    d.sizes.back() += 1;
    d.c.back() += 1;
  }
  for (std::size_t j = 0; j < d.blocks(); ++j) {
    int l = pairing(static_cast<std::size_t>(d.values[j]), lambda, prefix_root(datum, nu, d.c[j]), datum);
    d.levels.push_back(l);
    int b = d.sizes[j];
    d.k.push_back(l - 2 * b >= 0 ? d.c[j + 1] : l + 2 * d.c[j] - d.c[j + 1] + 1);
  }
  return d;
}

bool dominant_by_levels(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  for (std::size_t j = 0; j < d.blocks(); ++j)
    if (d.levels[j] < d.sizes[j]) return false;
  return true;
}

std::vector<int> dominance_positions(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  std::vector<int> out;
  for (std::size_t i = 0; i < d.blocks(); ++i) {
    int found = -1;
    for (int kp = d.c[i + 1]; kp >= d.c[i] + 1; --kp) {
      int h = pairing(static_cast<std::size_t>(d.values[i]), lambda, prefix_root(datum, nu, kp - 1), datum);
      if (h >= d.c[i + 1] - kp + 1) {
        found = kp;
        break;
      }
    }
    if (found < 0) return {};
    out.push_back(found);
  }
  return out;
}

bool is_piecewise_dominant(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  if (nu.empty()) return true;
  bool by_levels = dominant_by_levels(nu, lambda, datum);
  std::vector<int> positions = dominance_positions(nu, lambda, datum);
  bool by_positions = !positions.empty();
  if (by_levels != by_positions)
    throw PiecewiseError(PiecewiseError::Kind::CriterionMismatch, "dominance criteria disagree on " + sequence_to_string(nu));
  if (by_levels && positions != block_decompose(nu, lambda, datum).k)
    throw PiecewiseError(PiecewiseError::Kind::CriterionMismatch, "largest positions disagree with k_i on " + sequence_to_string(nu));
  return by_levels;
}

std::vector<Sequence> enumerate_pd(const RootVector& alpha, const DominantWeight& lambda, const CartanDatum& datum) {
  std::vector<Sequence> out;
  for (const Sequence& nu : enumerate_sequences(alpha))
    if (is_piecewise_dominant(nu, lambda, datum)) out.push_back(nu);
  return out;
}

std::vector<Refinement> refinements(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  std::vector<Refinement> out;
  int n = static_cast<int>(nu.size());
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      Refinement r;
      r.b = parts;
      r.c.push_back(0);
      for (int b : parts) r.c.push_back(r.c.back() + b);
      r.positive = true;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        int l = pairing(static_cast<std::size_t>(nu[r.c[i]]), lambda, prefix_root(datum, nu, r.c[i]), datum);
        r.lambdas.push_back(l);
        if (l <= 0) r.positive = false;
      }
      out.push_back(std::move(r));
      return;
    }
    for (int len = 1; p + len <= n && nu[p + len - 1] == nu[p]; ++len) {
      parts.push_back(len);
      rec(p + len);
      parts.pop_back();
    }
  };
  rec(0);
  return out;
}

GenWord interval_idempotent_word(const Sequence& nu, int u, int v) {
  int n = static_cast<int>(nu.size());
  if (u < 1 || u > v || v > n)
    throw PiecewiseError(PiecewiseError::Kind::ParameterOutOfRange, "interval out of range");
  for (int p = u; p < v; ++p)
    if (nu[p - 1] != nu[p]) throw PiecewiseError(PiecewiseError::Kind::ParameterOutOfRange, "interval is not constant on nu");
  GenWord g;
  g.source = source_of(nu);
  append_interval(g, u, v);
  return g;
}

GenWord z_lambda_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  require_pd(nu, lambda, datum);
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  GenWord g;
  g.source = source_of(nu);
  for (std::size_t t = 0; t < d.blocks(); ++t) {
    int c0 = d.c[t], b = d.sizes[t], l = d.levels[t];
    if (l >= 2 * b - 1) {
      for (int j = 1; j <= b; ++j) append_x(g, c0 + j, l - 2 * j + 1);
    } else if (l > b) {
      for (int j = 1; j <= l - b; ++j) append_x(g, c0 + j, l - 2 * j + 1);
      append_interval(g, c0 + l - b + 1, c0 + b);
    } else {
      append_interval(g, c0 + 1, c0 + b);
    }
  }
  return g;
}

GenWord z_prime_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  require_pd(nu, lambda, datum);
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  GenWord g;
  g.source = source_of(nu);
  for (std::size_t i = 0; i < d.blocks(); ++i) {
    int c0 = d.c[i], c1 = d.c[i + 1], b = d.sizes[i], l = d.levels[i];
    if (l >= 2 * b) {
      for (int j = 1; j <= b; ++j) append_x(g, c0 + j, l - 2 * j + 1);
    } else {
      int k = d.k[i];
      for (int j = 1; j <= k - c0; ++j) append_x(g, c0 + j, l - 2 * j + 1);
      for (int s = k; s <= c1 - 1; ++s) g.letters.push_back({GenLetter::Kind::Tau, s});
    }
  }
  return g;
}

GenWord e_minus_word(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  GenWord g;
  g.source = source_of(nu);
  for (std::size_t t = 0; t < d.blocks(); ++t) append_interval(g, d.c[t] + 1, d.c[t + 1]);
  return g;
}

std::vector<GenWord> r_lambda_set(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  require_pd(nu, lambda, datum);
  BlockDecomposition d = block_decompose(nu, lambda, datum);
  GenWord start;
  start.source = source_of(nu);
  std::vector<GenWord> current{start};
  for (std::size_t t = 0; t < d.blocks(); ++t) {
    int l = d.levels[t];
    std::vector<GenWord> next;
    for (const auto& a : interval_compositions(d.c[t] + 1, d.c[t + 1])) {
      std::size_t parts = a.size() - 1;
      std::vector<int> ls(parts, 0);
      while (true) {
        for (const GenWord& base : current) {
          GenWord g = base;
          for (std::size_t j = 0; j < parts; ++j) {
            append_interval(g, a[j], a[j + 1] - 1);
            append_x(g, a[j + 1] - 1, ls[j]);
          }
          next.push_back(std::move(g));
        }
        std::size_t j = 0;
        while (j < parts && ++ls[j] >= l) ls[j++] = 0;
        if (j == parts) break;
      }
    }
    current = std::move(next);
  }
  return current;
}

std::vector<GenWord> spanning_family(const Sequence& nu, const DominantWeight& lambda, const CartanDatum& datum) {
  std::vector<GenWord> out;
  std::uint16_t src = source_of(nu);
  for (const Refinement& r : refinements(nu, lambda, datum)) {
    if (!r.positive) continue;
    std::size_t m = r.b.size();
    std::vector<int> ns(m, 0);
    while (true) {
      GenWord g;
      g.source = src;
      for (std::size_t i = 0; i < m; ++i) {
        append_x(g, r.c[i] + 1, ns[i]);
        for (int s = r.c[i] + 1; s <= r.c[i + 1] - 1; ++s) g.letters.push_back({GenLetter::Kind::Tau, s});
      }
      out.push_back(std::move(g));
      std::size_t i = 0;
      while (i < m && ++ns[i] >= r.lambdas[i]) ns[i++] = 0;
      if (i == m) break;
    }
  }
  return out;
}

int word_degree(const GenWord& g, const std::vector<Sequence>& seqs, const CartanDatum& datum) {
  Sequence cur = seqs.at(g.source);
  int deg = 0;
  for (auto it = g.letters.rbegin(); it != g.letters.rend(); ++it) {
    if (it->kind == GenLetter::Kind::X) {
      int i = cur.at(it->index - 1);
      deg += datum.simple_form(i, i);
    } else if (it->kind == GenLetter::Kind::Tau) {
      int l = it->index;
      deg -= datum.simple_form(cur.at(l - 1), cur.at(l));
      std::swap(cur[l - 1], cur[l]);
    }
  }
  return deg;
}

SparseVec e_sum(const CyclotomicAlgebra& a) {
  SparseVec s;
  for (const Sequence& nu : enumerate_pd(a.alpha, a.lambda, a.datum)) s = s + a.idempotents[a.seq_index(nu)];
  return s;
}

SparseVec e_sum_minus(const CyclotomicAlgebra& a) {
  SparseVec s;
  for (const Sequence& nu : enumerate_pd(a.alpha, a.lambda, a.datum)) s = s + a.word_image(e_minus_word(nu, a.lambda, a.datum));
  return s;
}

bool fullness_check(const CyclotomicAlgebra& a, const SparseVec& e) {
  if (!(a.multiply(e, e) == e)) throw PiecewiseError(PiecewiseError::Kind::NotIdempotent, "element is not idempotent");
  std::size_t dim = a.dim();
  EchelonBasis span(a.field);
  for (std::size_t i = 0; i < dim && span.rank() < dim; ++i) {
    SparseVec u = a.multiply(a.basis_vector(i), e);
    if (u.empty()) continue;
    for (std::size_t j = 0; j < dim && span.rank() < dim; ++j) {
      SparseVec w = a.multiply(u, a.basis_vector(j));
      if (!w.empty()) span.insert(w);
    }
  }
  return span.rank() == dim;
}

std::vector<CheckResult> verify_spans(const CyclotomicAlgebra& a, const CocenterSpace& tr) {
  const DominantWeight& lam = a.lambda;
  const CartanDatum& dat = a.datum;
  int top = algebra_d(a);
  GradedDims trd = tr.dims();
  std::vector<Sequence> pd = enumerate_pd(a.alpha, lam, dat);
  std::string norm = "block t uses its own positions [c_{t-1}+1, c_t]";

  std::vector<GenWord> zs, es, rs;
  for (const Sequence& nu : pd) {
    zs.push_back(z_lambda_word(nu, lam, dat));
    es.push_back(e_minus_word(nu, lam, dat));
    for (GenWord& g : r_lambda_set(nu, lam, dat)) rs.push_back(std::move(g));
  }

  std::vector<CheckResult> out;
  {
    CheckResult r;
    r.id = "spans_a_top_degree";
    auto ranks = tr.image_ranks(images(a, zs));
    std::size_t got = ranks.count(top) ? ranks[top] : 0;
    r.witness("pd_count", std::to_string(pd.size()));
    r.witness("image_rank", std::to_string(got));
    r.witness("tr_top_dim", std::to_string(trd.get(top)));
    r.notes.push_back(norm);
    r.expect(got == trd.get(top), "Z images span rank " + std::to_string(got) + " of Tr_top dim " + std::to_string(trd.get(top)));
    for (const auto& [d, rk] : ranks)
      if (d != top && rk) r.fail("Z image in degree " + std::to_string(d));
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_b_degree_zero";
    auto ranks = tr.image_ranks(images(a, es));
    std::size_t got = ranks.count(0) ? ranks[0] : 0;
    r.witness("image_rank", std::to_string(got));
    r.witness("tr0_dim", std::to_string(trd.get(0)));
    r.notes.push_back(norm);
    r.expect(got == trd.get(0), "e(nu)^(-) images span rank " + std::to_string(got) + " of Tr_0 dim " + std::to_string(trd.get(0)));
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_c_r_lambda";
    auto ranks = tr.image_ranks(images(a, rs));
    r.witness("family_size", std::to_string(rs.size()));
    r.witness("image_ranks", ranks_to_string(ranks));
    r.witness("tr_dims", trd.to_string());
    r.notes.push_back(norm);
    r.expect(same_ranks(ranks, trd), "R^Lambda(nu) images do not span Tr");
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_d_spanning_family";
    std::vector<GenWord> all;
    for (std::size_t s = 0; s < a.sequences.size(); ++s)
      for (GenWord& g : spanning_family(a.sequences[s], lam, dat)) all.push_back(std::move(g));
    auto ranks = tr.image_ranks(images(a, all));
    r.witness("family_size", std::to_string(all.size()));
    r.witness("image_ranks", ranks_to_string(ranks));
    r.notes.push_back("refinement positivity evaluated with the coroot pairing");
    r.expect(same_ranks(ranks, trd), "spanning family images do not span Tr");
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_e_vanishing";
    std::size_t tested = 0;
    for (const Sequence& nu : a.sequences) {
      if (is_piecewise_dominant(nu, lam, dat)) continue;
      for (const GenWord& g : spanning_family(nu, lam, dat)) {
        ++tested;
        if (!tr.project(a.word_image(g)).coords.empty())
          r.fail("spanning element over non-dominant " + sequence_to_string(nu) + " survives in Tr");
      }
    }
    r.witness("elements_tested", std::to_string(tested));
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_f_degrees";
    r.witness("d_lambda_alpha", std::to_string(top));
    for (std::size_t t = 0; t < pd.size(); ++t) {
      int dz = word_degree(zs[t], a.sequences, dat);
      int de = word_degree(es[t], a.sequences, dat);
      r.expect(dz == top, "deg Z(" + sequence_to_string(pd[t]) + ") = " + std::to_string(dz));
      r.expect(de == 0, "deg e(" + sequence_to_string(pd[t]) + ")^(-) = " + std::to_string(de));
      auto h = a.homogeneous_degree(a.word_image(zs[t]));
      r.expect(h.has_value(), "image of Z(" + sequence_to_string(pd[t]) + ") is inhomogeneous");
    }
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "spans_g_divided_powers";
    std::size_t tested = 0;
    int n = a.n();
    for (const Sequence& nu : a.sequences) {
      const SparseVec& e = a.idempotents[a.seq_index(nu)];
      for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n && nu[v - 1] == nu[u - 1]; ++v) {
          ++tested;
          SparseVec y = Scalar::from_int(a.field, factorial(v - u + 1)) * a.word_image(interval_idempotent_word(nu, u, v)) - e;
          if (!tr.project(y).coords.empty())
            r.fail("(v-u+1)! e_[" + std::to_string(u) + "," + std::to_string(v) + "] e" + sequence_to_string(nu) + " - e" +
                   sequence_to_string(nu) + " not in [R,R]");
        }
    }
    r.witness("intervals_tested", std::to_string(tested));
    out.push_back(std::move(r));
  }
  {
    CheckResult r;
    r.id = "z_prime_proportional";
    for (std::size_t t = 0; t < pd.size(); ++t) {
      auto pz = tr.project(a.word_image(zs[t]));
      auto pp = tr.project(a.word_image(z_prime_word(pd[t], lam, dat)));
      std::string label = sequence_to_string(pd[t]);
      if (pz.coords.empty()) {
        r.expect(pp.coords.empty(), "Z'" + label + " survives while Z" + label + " vanishes");
        r.witness("scalar" + label, pp.coords.empty() ? "undetermined" : "none");
        continue;
      }
      Scalar s = Scalar::zero(a.field);
      if (!pp.coords.empty()) {
        if (pp.coords.leading() == pz.coords.leading()) s = pp.coords.entries.front().second / pz.coords.entries.front().second;
      }
      bool ok = pp.coords.empty() || (pp.degree == pz.degree && pp.coords == s * pz.coords);
      r.expect(ok, "Z'" + label + " is not proportional to Z" + label + " in Tr");
      r.witness("scalar" + label, ok ? s.to_string() : "none");
    }
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult verify_fullness(const CyclotomicAlgebra& a) {
  CheckResult r;
  r.id = "fullness";
  if (a.is_zero_algebra()) {
    r.status = CheckResult::Status::Skip;
    r.notes.push_back("zero algebra");
    return r;
  }
  SparseVec e = e_sum(a);
  SparseVec em = e_sum_minus(a);
  r.witness("pd_count", std::to_string(enumerate_pd(a.alpha, a.lambda, a.datum).size()));
  try {
    r.expect(fullness_check(a, e), "A e A != A for the sum of e(nu) over PD");
    r.expect(fullness_check(a, em), "A e A != A for the sum of e(nu)^(-) over PD");
  } catch (const PiecewiseError& err) {
    r.fail(err.what());
  }
  return r;
}

CheckResult verify_block_reduction(const CyclotomicAlgebra& a, const CocenterSpace& tr) {
  CheckResult r;
  r.id = "block_reduction";
  std::size_t tested = 0;
  for (const Sequence& nu : a.sequences) {
    for (const Refinement& ref : refinements(nu, a.lambda, a.datum)) {
      for (std::size_t t = 0; t < ref.b.size(); ++t) {
        int b = ref.b[t];
        if (b < 2) continue;
        int u = ref.c[t] + 1, v = ref.c[t + 1];
        auto y_word = [&](int k) {
          GenWord g;
          g.source = a.seq_index(nu);
          append_x(g, u, k);
          for (int s = u; s < v; ++s) g.letters.push_back({GenLetter::Kind::Tau, s});
          return g;
        };
        std::string where = sequence_to_string(nu) + " run [" + std::to_string(u) + "," + std::to_string(v) + "]";
        SparseVec line = a.word_image(interval_idempotent_word(nu, u, v));
        for (int k = 0; k < b - 1; ++k) {
          ++tested;
          r.expect(tr.project(a.word_image(y_word(k))).coords.empty(), "case (1) fails at k=" + std::to_string(k) + " on " + where);
        }
        ++tested;
        r.expect(in_cocenter_span(tr, {line}, a.word_image(y_word(b - 1))), "case (3) fails on " + where);
        auto comps = interval_compositions(u, v);
        for (const auto& comp : comps) {
          GenWord g;
          g.source = a.seq_index(nu);
          for (std::size_t j = 0; j + 1 < comp.size(); ++j) append_interval(g, comp[j], comp[j + 1] - 1);
          ++tested;
          r.expect(in_cocenter_span(tr, {line}, a.word_image(g)), "case (4) fails on " + where);
        }
        for (int k = b; k <= b + 1; ++k) {
          int excess = k - (b - 1);
          std::vector<SparseVec> targets;
          for (const auto& comp : comps) {
            std::size_t parts = comp.size() - 1;
            std::vector<int> ls(parts, 0);
            std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
              if (j + 1 == parts) {
                ls[j] = left;
                GenWord g;
                g.source = a.seq_index(nu);
                for (std::size_t q = 0; q < parts; ++q) {
                  append_interval(g, comp[q], comp[q + 1] - 1);
                  append_x(g, comp[q + 1] - 1, ls[q]);
                }
                targets.push_back(a.word_image(g));
                return;
              }
              for (int x = 0; x <= left; ++x) {
                ls[j] = x;
                rec(j + 1, left - x);
              }
            };
            rec(0, excess);
          }
          ++tested;
          r.expect(in_cocenter_span(tr, targets, a.word_image(y_word(k))), "case (2) fails at k=" + std::to_string(k) + " on " + where);
        }
      }
    }
  }
  r.witness("instances_tested", std::to_string(tested));
  return r;
}

CheckResult verify_dominance_criteria(const RootVector& alpha, const DominantWeight& lambda, const CartanDatum& datum) {
  CheckResult r;
  r.id = "dominance_criteria";
  std::size_t total = 0, dominant = 0;
  for (const Sequence& nu : enumerate_sequences(alpha)) {
    ++total;
    try {
      if (is_piecewise_dominant(nu, lambda, datum)) ++dominant;
    } catch (const PiecewiseError& e) {
      r.fail(e.what());
    }
  }
  r.witness("sequences", std::to_string(total));
  r.witness("piecewise_dominant", std::to_string(dominant));
  return r;
}

}  // namespace klr
