#include "monotile/group.hpp"

#include <cctype>
#include <utility>

namespace monotile {

////////////////////////////////////////////////////////////////////////////
// Element / FiniteSubset
////////////////////////////////////////////////////////////////////////////

std::string Element::str() const {
  if (_coords.size() == 1) {
    return _coords[0].str();
  }
  std::string out = "(";
  for (std::size_t i = 0; i < _coords.size(); ++i) {
    if (i != 0) {
      out += ',';
    }
    out += _coords[i].str();
  }
  return out + ")";
}

std::size_t Element::hash() const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto const& x : _coords) {
    h ^= x.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

FiniteSubset::FiniteSubset(std::vector<Element> elements) : _elements(std::move(elements)) {
  std::sort(_elements.begin(), _elements.end());
  _elements.erase(std::unique(_elements.begin(), _elements.end()), _elements.end());
}

FiniteSubset FiniteSubset::from_sorted(std::vector<Element> sorted) {
  FiniteSubset out;
  out._elements = std::move(sorted);
  return out;
}

std::size_t FiniteSubset::index_of(Element const& g) const {
  auto it = std::lower_bound(_elements.begin(), _elements.end(), g);
  if (it == _elements.end() || *it != g) {
    return _elements.size();
  }
  return static_cast<std::size_t>(it - _elements.begin());
}

bool FiniteSubset::is_subset_of(FiniteSubset const& other) const {
  return std::includes(other.begin(), other.end(), begin(), end());
}

////////////////////////////////////////////////////////////////////////////
// GroupContext
////////////////////////////////////////////////////////////////////////////

std::string_view to_string(GroupKind kind) noexcept {
  switch (kind) {
    case GroupKind::lattice: return "lattice";
    case GroupKind::cyclic: return "cyclic";
    case GroupKind::heisenberg3: return "heisenberg3";
    case GroupKind::pruefer: return "pruefer";
    case GroupKind::rationals: return "rationals";
    case GroupKind::direct_product: return "direct_product";
    case GroupKind::finite_extension: return "finite_extension";
  }
  return "unknown";
}

struct GroupContext::Impl {
  GroupKind                 kind  = GroupKind::lattice;
  std::size_t               width = 0;
  int                       d     = 0;
  std::int64_t              n     = 0;
  std::vector<GroupContext> factors;   // direct_product
  std::vector<std::size_t>  offsets;   // direct_product, size factors+1
  std::vector<GroupContext> ext;       // finite_extension: {ambient, base}
  FiniteSubset              reps;
};

namespace {

  bool is_prime(std::int64_t p) {
    if (p < 2) {
      return false;
    }
    for (std::int64_t q = 2; q * q <= p; ++q) {
      if (p % q == 0) {
        return false;
      }
    }
    return true;
  }

  bool is_power_of(Integer den, std::int64_t p) {
    Integer pp(static_cast<long>(p));
    while (den > 1) {
      if (den % pp != 0) {
        return false;
      }
      den /= pp;
    }
    return true;
  }

  Element slice(Element const& g, std::size_t from, std::size_t to) {
    Element::coords_type c(g.coords().begin() + from, g.coords().begin() + to);
    return Element(std::move(c));
  }

  [[noreturn]] void bad(Element const& g, std::string const& why) {
    throw Error(ErrorCode::encoding, "element " + g.str() + ": " + why);
  }

}  // namespace

GroupContext GroupContext::lattice(int d) {
  if (d < 0) {
    throw Error(ErrorCode::domain, "lattice dimension must be >= 0");
  }
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::lattice;
  impl->d     = d;
  impl->width = static_cast<std::size_t>(d);
  return GroupContext(impl);
}

GroupContext GroupContext::cyclic(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::domain, "cyclic order must be >= 1");
  }
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::cyclic;
  impl->n     = n;
  impl->width = 1;
  return GroupContext(impl);
}

GroupContext GroupContext::heisenberg3() {
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::heisenberg3;
  impl->width = 3;
  return GroupContext(impl);
}

GroupContext GroupContext::pruefer(std::int64_t p) {
  if (!is_prime(p)) {
    throw Error(ErrorCode::domain, "pruefer group needs a prime, got " + std::to_string(p));
  }
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::pruefer;
  impl->n     = p;
  impl->width = 1;
  return GroupContext(impl);
}

GroupContext GroupContext::rationals() {
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::rationals;
  impl->width = 1;
  return GroupContext(impl);
}

GroupContext GroupContext::direct_product(std::vector<GroupContext> factors) {
  if (factors.empty()) {
    throw Error(ErrorCode::domain, "direct product needs at least one factor");
  }
  auto impl  = std::make_shared<Impl>();
  impl->kind = GroupKind::direct_product;
  impl->offsets.push_back(0);
  for (auto const& f : factors) {
    impl->width += f.width();
    impl->offsets.push_back(impl->width);
  }
  impl->factors = std::move(factors);
  return GroupContext(impl);
}

GroupContext GroupContext::finite_extension(GroupContext ambient, GroupContext base,
                                            std::vector<Element> coset_reps) {
  bool whole = base == ambient;
  bool none  = base.is_trivial();
  bool first = ambient.kind() == GroupKind::direct_product
               && ambient.factors().front() == base;
  if (!whole && !none && !first) {
    throw Error(ErrorCode::unsupported_group,
                "base must be trivial, the ambient group, or the first factor of a direct product");
  }
  auto impl   = std::make_shared<Impl>();
  impl->kind  = GroupKind::finite_extension;
  impl->width = ambient.width();
  for (auto const& r : coset_reps) {
    ambient.validate(r);
  }
  FiniteSubset reps(coset_reps);
  if (reps.size() != coset_reps.size()) {
    throw Error(ErrorCode::not_coset_reps, "repeated coset representative");
  }
  if (!reps.contains(ambient.identity())) {
    throw Error(ErrorCode::not_coset_reps, "coset representatives must contain the identity");
  }
  std::size_t bw = base.width();
  auto in_base = [&](Element const& g) {
    if (whole) {
      return true;
    }
    for (std::size_t i = none ? 0 : bw; i < g.width(); ++i) {
      if (!g[i].is_zero()) {
        return false;
      }
    }
    return true;
  };
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      if (in_base(ambient.product(reps[i], ambient.inverse(reps[j])))) {
        throw Error(ErrorCode::not_coset_reps,
                    reps[i].str() + " and " + reps[j].str() + " lie in the same coset");
      }
    }
  }
  impl->ext  = {std::move(ambient), std::move(base)};
  impl->reps = std::move(reps);
  return GroupContext(impl);
}

GroupKind GroupContext::kind() const noexcept {
  return _impl->kind;
}

std::size_t GroupContext::width() const noexcept {
  return _impl->width;
}

int GroupContext::dimension() const {
  if (_impl->kind != GroupKind::lattice) {
    throw Error(ErrorCode::domain, "dimension() needs a lattice");
  }
  return _impl->d;
}

std::int64_t GroupContext::modulus() const {
  if (_impl->kind != GroupKind::cyclic && _impl->kind != GroupKind::pruefer) {
    throw Error(ErrorCode::domain, "modulus() needs a cyclic or pruefer group");
  }
  return _impl->n;
}

std::vector<GroupContext> const& GroupContext::factors() const {
  if (_impl->kind != GroupKind::direct_product) {
    throw Error(ErrorCode::domain, "factors() needs a direct product");
  }
  return _impl->factors;
}

GroupContext const& GroupContext::ambient() const {
  if (_impl->kind != GroupKind::finite_extension) {
    throw Error(ErrorCode::domain, "ambient() needs a finite extension");
  }
  return _impl->ext[0];
}

GroupContext const& GroupContext::base() const {
  if (_impl->kind != GroupKind::finite_extension) {
    throw Error(ErrorCode::domain, "base() needs a finite extension");
  }
  return _impl->ext[1];
}

FiniteSubset const& GroupContext::coset_reps() const {
  if (_impl->kind != GroupKind::finite_extension) {
    throw Error(ErrorCode::domain, "coset_reps() needs a finite extension");
  }
  return _impl->reps;
}

bool GroupContext::is_abelian() const {
  switch (_impl->kind) {
    case GroupKind::heisenberg3:
      return false;
    case GroupKind::direct_product:
      return std::all_of(_impl->factors.begin(), _impl->factors.end(),
                         [](GroupContext const& f) { return f.is_abelian(); });
    case GroupKind::finite_extension:
      return ambient().is_abelian();
    default:
      return true;
  }
}

Element GroupContext::identity() const {
  Element::coords_type c(_impl->width, Rational(0));
  return Element(std::move(c));
}

Element GroupContext::product(Element const& g, Element const& h) const {
  auto const& I = *_impl;
  switch (I.kind) {
    case GroupKind::lattice:
    case GroupKind::rationals: {
      Element r(g);
      for (std::size_t i = 0; i < I.width; ++i) {
        r[i] += h[i];
      }
      return r;
    }
    case GroupKind::cyclic: {
      Rational s = g[0] + h[0];
      if (s >= Rational(I.n)) {
        s -= Rational(I.n);
      }
      return Element{s};
    }
    case GroupKind::pruefer: {
      Rational s = g[0] + h[0];
      if (s >= Rational(1)) {
        s -= Rational(1);
      }
      return Element{s};
    }
    case GroupKind::heisenberg3:
      return Element{g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]};
    case GroupKind::direct_product: {
      Element r;
      r.coords().reserve(I.width);
      for (std::size_t f = 0; f < I.factors.size(); ++f) {
        auto a = slice(g, I.offsets[f], I.offsets[f + 1]);
        auto b = slice(h, I.offsets[f], I.offsets[f + 1]);
        auto p = I.factors[f].product(a, b);
        r.coords().insert(r.coords().end(), p.coords().begin(), p.coords().end());
      }
      return r;
    }
    case GroupKind::finite_extension:
      return I.ext[0].product(g, h);
  }
  return g;
}

Element GroupContext::inverse(Element const& g) const {
  auto const& I = *_impl;
  switch (I.kind) {
    case GroupKind::lattice:
    case GroupKind::rationals: {
      Element r(g);
      for (std::size_t i = 0; i < I.width; ++i) {
        r[i] = -r[i];
      }
      return r;
    }
    case GroupKind::cyclic:
      return g[0].is_zero() ? g : Element{Rational(I.n) - g[0]};
    case GroupKind::pruefer:
      return g[0].is_zero() ? g : Element{Rational(1) - g[0]};
    case GroupKind::heisenberg3:
      return Element{-g[0], -g[1], g[0] * g[1] - g[2]};
    case GroupKind::direct_product: {
      Element r;
      for (std::size_t f = 0; f < I.factors.size(); ++f) {
        auto p = I.factors[f].inverse(slice(g, I.offsets[f], I.offsets[f + 1]));
        r.coords().insert(r.coords().end(), p.coords().begin(), p.coords().end());
      }
      return r;
    }
    case GroupKind::finite_extension:
      return I.ext[0].inverse(g);
  }
  return g;
}

void GroupContext::validate(Element const& g) const {
  auto const& I = *_impl;
  if (g.width() != I.width) {
    bad(g, "expected " + std::to_string(I.width) + " coordinates for " + std::string(to_string(I.kind)));
  }
  switch (I.kind) {
    case GroupKind::lattice:
    case GroupKind::heisenberg3:
      for (auto const& x : g.coords()) {
        if (!x.is_integer()) {
          bad(g, "coordinates must be integers");
        }
      }
      return;
    case GroupKind::cyclic:
      if (!g[0].is_integer() || g[0].sign() < 0 || g[0] >= Rational(I.n)) {
        bad(g, "expected an integer in [0," + std::to_string(I.n) + ")");
      }
      return;
    case GroupKind::pruefer:
      if (g[0].sign() < 0 || g[0] >= Rational(1)) {
        bad(g, "expected a fraction in [0,1)");
      }
      if (!is_power_of(g[0].denominator(), I.n)) {
        bad(g, "denominator is not a power of " + std::to_string(I.n));
      }
      return;
    case GroupKind::rationals:
      return;
    case GroupKind::direct_product:
      for (std::size_t f = 0; f < I.factors.size(); ++f) {
        I.factors[f].validate(slice(g, I.offsets[f], I.offsets[f + 1]));
      }
      return;
    case GroupKind::finite_extension:
      I.ext[0].validate(g);
      return;
  }
}

bool GroupContext::is_valid(Element const& g) const {
  try {
    validate(g);
    return true;
  } catch (Error const&) {
    return false;
  }
}

std::vector<Element> GroupContext::generators() const {
  auto const&          I = *_impl;
  std::vector<Element> out;
  switch (I.kind) {
    case GroupKind::lattice:
      for (std::size_t i = 0; i < I.width; ++i) {
        Element e = identity();
        e[i]      = 1;
        out.push_back(e);
      }
      break;
    case GroupKind::cyclic:
      if (I.n > 1) {
        out.push_back(Element{Rational(1)});
      }
      break;
    case GroupKind::heisenberg3:
      out = {Element{1, 0, 0}, Element{0, 1, 0}, Element{0, 0, 1}};
      break;
    case GroupKind::pruefer:
      for (std::int64_t q = I.n, k = 0; k < 3; ++k, q *= I.n) {
        out.push_back(Element{Rational(1, q)});
      }
      break;
    case GroupKind::rationals:
      out = {Element{Rational(1)}, Element{Rational(1, 2)}, Element{Rational(1, 6)}};
      break;
    case GroupKind::direct_product:
      for (std::size_t f = 0; f < I.factors.size(); ++f) {
        for (auto const& s : I.factors[f].generators()) {
          Element e = identity();
          std::copy(s.coords().begin(), s.coords().end(), e.coords().begin() + I.offsets[f]);
          out.push_back(e);
        }
      }
      break;
    case GroupKind::finite_extension:
      out = I.ext[0].generators();
      break;
  }
  return out;
}

Element GroupContext::embed_base(Element const& u) const {
  auto const& amb = ambient();
  if (u.width() == amb.width()) {
    return u;
  }
  Element e = amb.identity();
  std::copy(u.coords().begin(), u.coords().end(), e.coords().begin());
  return e;
}

bool operator==(GroupContext const& a, GroupContext const& b) {
  if (a._impl == b._impl) {
    return true;
  }
  auto const& x = *a._impl;
  auto const& y = *b._impl;
  if (x.kind != y.kind || x.width != y.width) {
    return false;
  }
  switch (x.kind) {
    case GroupKind::lattice:
      return x.d == y.d;
    case GroupKind::cyclic:
    case GroupKind::pruefer:
      return x.n == y.n;
    case GroupKind::heisenberg3:
    case GroupKind::rationals:
      return true;
    case GroupKind::direct_product:
      return x.factors == y.factors;
    case GroupKind::finite_extension:
      return x.ext == y.ext && x.reps == y.reps;
  }
  return false;
}

////////////////////////////////////////////////////////////////////////////
// Parsing and set operations
////////////////////////////////////////////////////////////////////////////

Element parse_element(GroupContext const& ctx, std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      s += c;
    }
  }
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') {
      throw Error(ErrorCode::encoding, "unbalanced parenthesis in '" + std::string(text) + "'");
    }
    s = s.substr(1, s.size() - 2);
  }
  Element e;
  if (!s.empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = s.find(',', start);
      e.coords().push_back(Rational::parse(s.substr(start, comma - start)));
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
  }
  ctx.validate(e);
  return e;
}

std::vector<Element> parse_elements(GroupContext const& ctx, std::string_view text) {
  std::vector<Element> out;
  std::size_t          start = 0;
  while (start <= text.size()) {
    auto semi  = text.find(';', start);
    auto piece = text.substr(start, semi == std::string_view::npos ? semi : semi - start);
    bool blank = std::all_of(piece.begin(), piece.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank || ctx.width() == 0) {
      out.push_back(parse_element(ctx, piece));
    }
    if (semi == std::string_view::npos) {
      break;
    }
    start = semi + 1;
  }
  return out;
}

FiniteSubset translate(GroupContext const& ctx, Element const& g, FiniteSubset const& F) {
  std::vector<Element> out;
  out.reserve(F.size());
  for (auto const& f : F) {
    out.push_back(ctx.product(g, f));
  }
  return FiniteSubset(std::move(out));
}

FiniteSubset right_translate(GroupContext const& ctx, FiniteSubset const& F,
                             Element const& g) {
  std::vector<Element> out;
  out.reserve(F.size());
  for (auto const& f : F) {
    out.push_back(ctx.product(f, g));
  }
  return FiniteSubset(std::move(out));
}

FiniteSubset product_set(GroupContext const& ctx, FiniteSubset const& A,
                         FiniteSubset const& B) {
  std::vector<Element> out;
  out.reserve(A.size() * B.size());
  for (auto const& a : A) {
    for (auto const& b : B) {
      out.push_back(ctx.product(a, b));
    }
  }
  return FiniteSubset(std::move(out));
}

bool disjoint_product(GroupContext const& ctx, FiniteSubset const& A,
                      FiniteSubset const& B, FiniteSubset& out) {
  std::vector<Element> all;
  all.reserve(A.size() * B.size());
  for (auto const& a : A) {
    for (auto const& b : B) {
      all.push_back(ctx.product(a, b));
    }
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    return false;
  }
  out = FiniteSubset::from_sorted(std::move(all));
  return true;
}

FiniteSubset inverse_set(GroupContext const& ctx, FiniteSubset const& F) {
  std::vector<Element> out;
  out.reserve(F.size());
  for (auto const& f : F) {
    out.push_back(ctx.inverse(f));
  }
  return FiniteSubset(std::move(out));
}

FiniteSubset set_union(FiniteSubset const& A, FiniteSubset const& B) {
  std::vector<Element> out;
  out.reserve(A.size() + B.size());
  std::set_union(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return FiniteSubset::from_sorted(std::move(out));
}

FiniteSubset set_difference(FiniteSubset const& A, FiniteSubset const& B) {
  std::vector<Element> out;
  std::set_difference(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(out));
  return FiniteSubset::from_sorted(std::move(out));
}

}  // namespace monotile
