"""Wide subcategories add(G) of mod-Λ: approximations, relative AR theory and σ_X.

All computations stay inside mod-Λ: Ext inside X is ambient Ext (X is
extension closed), and the morphism category H(X) is the full subcategory of
H(Λ) whose indecomposables have both terms in add(G).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import arquiver as aq
from . import exactlin as el
from . import functcat as fc
from . import modcat as mc
from . import morphcat as mh
from .modcat import Module, ModuleMap, SES
from .morphcat import Conflation, MorphMap, MorphObject


class NotWide(ValueError):
    pass


class NotInSubcategory(ValueError):
    pass


class RelativeProjective(ValueError):
    pass


class NoMatch(RuntimeError):
    pass


@dataclass(eq=False)
class SubcatSpec:
    generators: list
    name: str = "X"
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for i, g in enumerate(self.generators):
            for h in self.generators[:i]:
                if mc.is_isomorphic(g, h):
                    raise ValueError("generators must be pairwise non-isomorphic")

    @property
    def alg(self):
        return self.generators[0].alg

    def index_of(self, m: Module) -> Optional[int]:
        for i, g in enumerate(self.generators):
            if mc.is_isomorphic(g, m):
                return i
        return None

    def contains(self, m: Module, seed: int = 0) -> bool:
        """m lies in add(generators)."""
        if m.is_zero():
            return True
        return all(self.index_of(s) is not None for s, _ in mc.decompose(m, seed))

    def is_everything(self, seed: int = 0) -> bool:
        q = aq.ar_quiver(self.alg, seed=seed, strict=False)
        return q.complete and len(q.vertices) == len(self.generators)


def whole_category(alg, seed: int = 0) -> SubcatSpec:
    return SubcatSpec(fc._indecomposables(alg, seed), "mod")


# ---------------------------------------------------------- approximations


def _radical_rows(a: Module, b: Module, same: bool) -> np.ndarray:
    if same:
        return mc.end_data(a).radical
    return mc.hom_space(a, b)


def approx_right(spec: SubcatSpec, v: Module) -> tuple[Module, ModuleMap]:
    """Minimal right add(G)-approximation E -> v."""
    p = v.p
    pieces, maps = [], []
    for gi, g in enumerate(spec.generators):
        hs = mc.hom_space(g, v)
        if hs.shape[0] == 0:
            continue
        # composites g -> g' -> v through radical maps are superfluous
        sub = []
        for gj, g2 in enumerate(spec.generators):
            for r in _radical_rows(g, g2, gi == gj):
                rho = mc.map_from_flat(g, g2, r)
                for t in mc.hom_space(g2, v):
                    sub.append((mc.map_from_flat(g2, v, t) @ rho).flat())
        sub = el.row_basis(np.array(sub, dtype=np.int64), p) if sub else el.zeros(0, hs.shape[1])
        for row in fc._complement_in(hs, sub, p):
            pieces.append(g)
            maps.append(mc.map_from_flat(g, v, row))
    if not pieces:
        z = mc.zero_module(v.alg)
        return z, mc.zero_map(z, v)
    e, _, _ = mc.direct_sum(pieces)
    return e, mc.hstack_maps(maps, e)


def approx_left(spec: SubcatSpec, v: Module) -> tuple[Module, ModuleMap]:
    """Minimal left add(G)-approximation v -> E."""
    p = v.p
    pieces, maps = [], []
    for gi, g in enumerate(spec.generators):
        hs = mc.hom_space(v, g)
        if hs.shape[0] == 0:
            continue
        sub = []
        for gj, g2 in enumerate(spec.generators):
            for r in _radical_rows(g2, g, gi == gj):
                rho = mc.map_from_flat(g2, g, r)
                for t in mc.hom_space(v, g2):
                    sub.append((rho @ mc.map_from_flat(v, g2, t)).flat())
        sub = el.row_basis(np.array(sub, dtype=np.int64), p) if sub else el.zeros(0, hs.shape[1])
        for row in fc._complement_in(hs, sub, p):
            pieces.append(g)
            maps.append(mc.map_from_flat(v, g, row))
    if not pieces:
        z = mc.zero_module(v.alg)
        return z, mc.zero_map(v, z)
    e, _, _ = mc.direct_sum(pieces)
    return e, mc.vstack_maps(maps, e)


# ------------------------------------------------------------- wideness


@dataclass
class WideReport:
    wide: bool
    witness: Optional[str] = None


def is_wide(spec: SubcatSpec, seed: int = 0) -> WideReport:
    if "wide" in spec._cache:
        return spec._cache["wide"]
    gens = spec.generators
    out = WideReport(True)
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            for r in mc.hom_space(a, b):
                h = mc.map_from_flat(a, b, r)
                if not spec.contains(mc.kernel(h)[0], seed):
                    out = WideReport(False, f"kernel of a map {i}->{j}")
                elif not spec.contains(mc.cokernel(h)[0], seed):
                    out = WideReport(False, f"cokernel of a map {i}->{j}")
                if not out.wide:
                    break
            if out.wide:
                for s in mc.ext1_basis(a, b):
                    if not spec.contains(s.middle, seed):
                        out = WideReport(False, f"extension of {i} by {j}")
                        break
            if not out.wide:
                break
        if not out.wide:
            break
    spec._cache["wide"] = out
    return out


def _require_wide(spec: SubcatSpec):
    rep = is_wide(spec)
    if not rep.wide:
        raise NotWide(rep.witness)


def relative_proj_inj(spec: SubcatSpec) -> tuple[list, list]:
    _require_wide(spec)
    if "projinj" not in spec._cache:
        gens = spec.generators
        proj = [i for i, g in enumerate(gens) if all(mc.ext_dim(g, x) == 0 for x in gens)]
        inj = [i for i, g in enumerate(gens) if all(mc.ext_dim(x, g) == 0 for x in gens)]
        spec._cache["projinj"] = (proj, inj)
    return spec._cache["projinj"]


def _proj_spec(spec: SubcatSpec) -> SubcatSpec:
    proj, _ = relative_proj_inj(spec)
    return SubcatSpec([spec.generators[i] for i in proj], spec.name + ".P")


def _inj_spec(spec: SubcatSpec) -> SubcatSpec:
    _, inj = relative_proj_inj(spec)
    return SubcatSpec([spec.generators[i] for i in inj], spec.name + ".I")


@dataclass
class RelPresentation:
    """P1 -ℓ-> P0 -h-> c (side 'proj') or c -d-> I0 -q-> I1 (side 'inj')."""
    c: Module
    side: str
    first: ModuleMap  # h: P0 -> c, or d: c -> I0
    second: ModuleMap  # ℓ: P1 -> P0, or q: I0 -> I1
    k: ModuleMap  # P1 -> Ker h, or b: Coker d -> I1
    inner: ModuleMap  # Ker h -> P0 inclusion, or a: I0 -> Coker d


def min_rel_presentation(c: Module, spec: SubcatSpec, side: str = "proj") -> RelPresentation:
    _require_wide(spec)
    if not spec.contains(c):
        raise NotInSubcategory("module is not in add(generators)")
    if side == "proj":
        ps = _proj_spec(spec)
        p0, h = approx_right(ps, c)
        kh, i = mc.kernel(h)
        p1, k = approx_right(ps, kh)
        return RelPresentation(c, side, h, i @ k, k, i)
    if side == "inj":
        js = _inj_spec(spec)
        i0, d = approx_left(js, c)
        cd, a = mc.cokernel(d)
        i1, b = approx_left(js, cd)
        return RelPresentation(c, side, d, b @ a, b, a)
    raise ValueError(f"unknown side {side!r}")


# ------------------------------------------------------ relative AR theory


def _rad_maps_into(spec: SubcatSpec, c: Module, ci: int) -> list:
    out = []
    for j, z in enumerate(spec.generators):
        for r in _radical_rows(z, c, j == ci):
            out.append(mc.map_from_flat(z, c, r))
    return out


def rel_almost_split(c: Module, spec: SubcatSpec, seed: int = 0) -> SES:
    """The almost split sequence of X ending at c, found among extensions by generators."""
    _require_wide(spec)
    ci = spec.index_of(c)
    if ci is None:
        raise NotInSubcategory("end term must be a generator up to isomorphism")
    proj, _ = relative_proj_inj(spec)
    if ci in proj:
        raise RelativeProjective("relative projective objects end no almost split sequence")
    c = spec.generators[ci]
    rad = _rad_maps_into(spec, c, ci)
    for a in spec.generators:
        n = mc.ext_dim(c, a)
        if n == 0:
            continue
        blocks = [mc.pullback_matrix(c, a, h) for h in rad]
        blocks = [b for b in blocks if b.shape[0]]
        cond = np.concatenate(blocks, axis=0) if blocks else el.zeros(0, n)
        sol = el.nullspace(cond, c.p) if cond.shape[0] else el.eye(n)
        if sol.shape[0] == 0:
            continue
        data = mc.ext_data(c, a)
        xi = el.matmul(sol[:1], data.basis, c.p)[0]
        s = mc.realize_extension(data, xi)
        if not verify_rel_almost_split(s, spec, seed):
            raise aq.SearchExhausted("candidate failed the relative verification")
        s.almost_split = True
        return s
    raise aq.SearchExhausted("no generator carries an almost split extension")


def verify_rel_almost_split(s: SES, spec: SubcatSpec, seed: int = 0) -> bool:
    if not all(spec.contains(t, seed) for t in (s.start, s.middle, s.end)):
        return False
    return aq.verify_almost_split(s, spec.generators, seed)


def tau_X(c: Module, spec: SubcatSpec, seed: int = 0) -> Module:
    return rel_almost_split(c, spec, seed).start


def tau_X_inv(a: Module, spec: SubcatSpec, seed: int = 0) -> Optional[Module]:
    _, inj = relative_proj_inj(spec)
    ai = spec.index_of(a)
    if ai in inj:
        return None
    proj, _ = relative_proj_inj(spec)
    for i, c in enumerate(spec.generators):
        if i in proj:
            continue
        if mc.is_isomorphic(tau_X(c, spec, seed), a):
            return c
    raise aq.SearchExhausted("no generator has the given relative translate")


def h_universe(spec: SubcatSpec, seed: int = 0) -> list:
    """Indecomposables of H(X): those of H(Λ) with both terms in add(G)."""
    hq = mh.ar_quiver_H(spec.alg, seed=seed)
    return [o for o in hq.objects if spec.contains(o.x, seed) and spec.contains(o.y, seed)]


def prop_5_4(delta: SES, spec: SubcatSpec, seed: int = 0) -> Conflation:
    """0 -> (I0 -q-> I1) -> (W -br-> I1) -> (C -> 0) -> 0 from the pushout of δ along d."""
    a, b, c = delta.start, delta.middle, delta.end
    pres = min_rel_presentation(a, spec, "inj")
    d, q, bmap, amap = pres.first, pres.second, pres.k, pres.inner
    i0, i1 = d.target, q.target
    sm, (i_b, i_i), (pr_b, pr_i) = mc.direct_sum([b, i0])
    w, qw = mc.cokernel(i_b @ delta.f - i_i @ d)
    u = qw @ i_i
    hmap = qw @ i_b
    v = mc.induced_on_quotient(qw, delta.g @ pr_b)
    r = mc.induced_on_quotient(qw, amap @ pr_i)
    start = mh.morph(q)
    mid = mh.morph(bmap @ r)
    end = mh.to_zero(c)
    infl = MorphMap(start, mid, u, mc.identity_map(i1))
    defl = MorphMap(mid, end, v, mc.zero_map(i1, end.y))
    return Conflation(infl, defl, "canonical")


def prop_5_5(delta: SES, spec: SubcatSpec, seed: int = 0) -> Conflation:
    """0 -> (0 -> A) -> (P1 -wk-> Z) -> (P1 -ℓ-> P0) -> 0 from the pullback of δ along h."""
    a, b, c = delta.start, delta.middle, delta.end
    pres = min_rel_presentation(c, spec, "proj")
    h, ell, k, i = pres.first, pres.second, pres.k, pres.inner
    p0, p1 = h.source, ell.source
    sm, (i_b, i_p), (pr_b, pr_p) = mc.direct_sum([b, p0])
    z, inc = mc.kernel(delta.g @ pr_b - h @ pr_p)
    u = mc.restrict_to_sub(i_b @ delta.f, inc)
    v = pr_p @ inc
    w = mc.restrict_to_sub(i_p @ i, inc)
    start = mh.zero_to(a)
    mid = mh.morph(w @ k)
    end = mh.morph(ell)
    infl = MorphMap(start, mid, mc.zero_map(start.x, p1), u)
    defl = MorphMap(mid, end, mc.identity_map(p1), v)
    return Conflation(infl, defl, "canonical")


# ----------------------------------------------------------------- σ_X


@dataclass
class SigmaTable:
    spec: SubcatSpec
    images: list  # generator index -> generator index of σ_X
    presentations: list  # generator index -> (A -f-> B)
    route: list  # how τ^-1_{H(X)}(0 -> X') was obtained

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


def _functor_data(spec: SubcatSpec) -> fc.HomAlgebra:
    if "fdata" not in spec._cache:
        zero = lambda x, y: el.zeros(0, sum(a * b for a, b in zip(x.dims, y.dims)))
        spec._cache["fdata"] = fc._build_hom_algebra(spec.alg, spec.generators, zero, False, f"End({spec.name})")
    return spec._cache["fdata"]


def _tau_inv_H_zero_to(spec: SubcatSpec, xi: int, seed: int = 0) -> tuple[MorphObject, str]:
    x = spec.generators[xi]
    if spec.is_everything(seed):
        return mh.tau_H_inv(mh.zero_to(x)), "structural"
    _, inj = relative_proj_inj(spec)
    if xi not in inj:
        c = tau_X_inv(x, spec, seed)
        pres = min_rel_presentation(c, spec, "proj")
        return mh.morph(pres.second), "relative presentation"
    # (ν_X^-1 I -> 0): the relative projective P with (P, -) ≅ D(-, I) on X
    data = _functor_data(spec)
    target = mc.dual(fc.representable(data, x).evaluation)
    proj, _ = relative_proj_inj(spec)
    for i in proj:
        if mc.is_isomorphic(fc.corepresentable(data, spec.generators[i]).evaluation, target):
            return mh.to_zero(spec.generators[i]), "relative Nakayama"
    raise NoMatch("no relative projective matches the injective")


def sigma_X(spec: SubcatSpec, seed: int = 0) -> SigmaTable:
    _require_wide(spec)
    data = _functor_data(spec)
    images, pres, routes = [], [], []
    duals = [mc.dual(fc.representable(data, t).evaluation) for t in spec.generators]
    for xi in range(len(spec.generators)):
        ab, route = _tau_inv_H_zero_to(spec, xi, seed)
        ca = fc.corepresentable(data, ab.x)
        cb = fc.corepresentable(data, ab.y)
        coker = mc.cokernel(fc.functor_map(cb, ca, ab.f))[0]
        hits = [t for t, dt in enumerate(duals) if mc.is_isomorphic(coker, dt)]
        if len(hits) != 1:
            raise NoMatch(f"generator {xi}: {len(hits)} candidates")
        images.append(hits[0])
        pres.append(ab)
        routes.append(route)
    return SigmaTable(spec, images, pres, routes)


@dataclass
class RelativeDualReport:
    x: Module
    ok: bool
    dims: dict


def verify_cor_5_6(spec: SubcatSpec, x: Module, seed: int = 0) -> RelativeDualReport:
    """0 -> (-, σ τ_X x) -> D(P, -) -> D(Q, -) -> D(x, -), exact at the first three nodes."""
    xi = spec.index_of(x)
    proj, _ = relative_proj_inj(spec)
    if xi is None or xi in proj:
        raise RelativeProjective("needs an indecomposable outside the relative projectives")
    data = _functor_data(spec)
    pres = min_rel_presentation(spec.generators[xi], spec, "proj")
    pmod, qmod = pres.second.source, pres.second.target
    cp, cq, cx = (fc.corepresentable(data, m) for m in (pmod, qmod, spec.generators[xi]))
    alpha = fc.functor_map(cq, cp, pres.second)
    beta = fc.functor_map(cx, cq, pres.first)
    da, db = mc.dual_map(alpha), mc.dual_map(beta)
    ker = mc.kernel(da)[0]
    t = tau_X(spec.generators[xi], spec, seed)
    sig = sigma_X(spec, seed)
    st = spec.generators[sig.images[spec.index_of(t)]]
    rep = fc.representable(data, st).evaluation
    ok = mc.is_isomorphic(ker, rep) and fc._exact_at(da, db)
    return RelativeDualReport(x, bool(ok), {"kernel": ker.dims, "DP": da.source.dims, "DQ": da.target.dims})
