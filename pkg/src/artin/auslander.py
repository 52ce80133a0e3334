"""AR quivers of Auslander algebras read off from the morphism category.

Γ_A is obtained from Γ_H by deleting the vertices (M -1-> M) and (M -> 0)
and relabelling the rest by their functor images.  The periodicity and
finiteness checks below compare that picture with direct knitting over A.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import arquiver as aq
from . import functcat as fc
from . import modcat as mc
from . import morphcat as mh
from .algebra import SCAlgebra
from .arquiver import ARQuiverData
from .modcat import Module


class MismatchFailure(RuntimeError):
    pass


class PeriodicityFailure(RuntimeError):
    pass


class NoStarModule(RuntimeError):
    pass


class StructureFailure(RuntimeError):
    pass


class WellDefinednessFailure(RuntimeError):
    pass


ORBIT_LIMIT = 256


def _need_self_injective(alg: SCAlgebra):
    if not mc.self_injective(alg):
        raise ValueError(f"{alg.name}: needs a self-injective algebra")


def _union_components(n: int, arrows, tau_pairs) -> list[int]:
    comp = list(range(n))

    def find(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    for a, b, _ in arrows:
        comp[find(a)] = find(b)
    for a, b in tau_pairs.items():
        comp[find(a)] = find(b)
    roots: dict = {}
    return [roots.setdefault(find(i), len(roots)) for i in range(n)]


def _restrict(q: ARQuiverData, keep: list[int], extra_flags=None) -> tuple[ARQuiverData, dict]:
    ren = {i: k for k, i in enumerate(keep)}
    arrows = [(ren[a], ren[b], k) for a, b, k in q.arrows if a in ren and b in ren]
    tau = {ren[a]: ren[b] for a, b in q.tau_pairs.items() if a in ren and b in ren}
    flags = [dict(q.flags[i], **(extra_flags(i) if extra_flags else {})) for i in keep]
    out = ARQuiverData(q.alg, [q.vertices[i] for i in keep], arrows, tau,
                       _union_components(len(keep), arrows, tau), flags, {}, q.complete)
    return out, ren


# ------------------------------------------------------------------ Γ_A


def gamma_A(alg: SCAlgebra, seed: int = 0, check: bool = True) -> ARQuiverData:
    """Γ_H minus the (b)/(c) vertices, relabelled by Θ.

    The result carries ``h_index`` (Γ_A vertex -> Γ_H vertex) and ``h_to_a``.
    With ``check`` the quiver is compared against knitting over A itself.
    """
    key = ("gammaA", seed, check)
    if key in alg._cache:
        return alg._cache[key]
    hq = mh.ar_quiver_H(alg, seed=seed)
    data = fc.auslander_algebra(alg, seed)
    q = hq.quiver
    keep = [i for i, t in enumerate(hq.types) if t not in ("b", "c")]
    ren = {i: k for k, i in enumerate(keep)}
    verts = [fc.theta(hq.objects[i], data).evaluation for i in keep]
    arrows = [(ren[a], ren[b], k) for a, b, k in q.arrows if a in ren and b in ren]
    tau = {ren[a]: ren[b] for a, b in q.tau_pairs.items()
           if a in ren and b in ren and hq.types[a] != "a"}
    flags = [{"projective": mc.is_projective_module(v), "injective": mc.is_injective_module(v),
              "type": hq.types[i], "h_index": i} for v, i in zip(verts, keep)]
    out = ARQuiverData(data.alg, verts, arrows, tau, _union_components(len(verts), arrows, tau),
                       flags, {}, q.complete)
    out.h_index = keep
    out.h_to_a = ren
    out.hq = hq
    if check:
        _cross_check(out, seed)
    alg._cache[key] = out
    return out


def _cross_check(ga: ARQuiverData, seed: int):
    direct = aq.ar_quiver(ga.alg, seed=seed)
    if len(direct.vertices) != len(ga.vertices):
        raise aq.CrossCheckMismatch(f"Γ_A has {len(ga.vertices)} vertices, "
                                    f"knitting over A finds {len(direct.vertices)}")
    match = []
    for v in ga.vertices:
        j = direct.index_of(v)
        if j is None or j in match:
            raise aq.CrossCheckMismatch("Θ-images are not in bijection with indecomposable A-modules")
        match.append(j)
    mine = sorted((match[a], match[b], k) for a, b, k in ga.arrows)
    if mine != sorted(direct.arrows):
        raise aq.CrossCheckMismatch("arrows of Γ_A disagree with knitting over A")
    if {match[a]: match[b] for a, b in ga.tau_pairs.items()} != direct.tau_pairs:
        raise aq.CrossCheckMismatch("translation of Γ_A disagrees with knitting over A")
    ga.direct_match = match


def tau_orbit(q: ARQuiverData, i: int) -> set:
    seen, todo = {i}, [i]
    while todo:
        j = todo.pop()
        for k in (q.tau_of(j), q.tau_inv_of(j)):
            if k is not None and k not in seen:
                seen.add(k)
                todo.append(k)
    return seen


def gamma_A_stable(alg: SCAlgebra, seed: int = 0) -> ARQuiverData:
    """Drop projective vertices together with their whole τ-orbits."""
    ga = gamma_A(alg, seed)
    gone: set = set()
    for i, fl in enumerate(ga.flags):
        if fl["projective"]:
            gone |= tau_orbit(ga, i)
    keep = [i for i in range(len(ga.vertices)) if i not in gone]
    out, ren = _restrict(ga, keep)
    out.removed = sorted(gone)
    out.parent = ga
    return out


# -------------------------------------------------------------- Frobenius


@dataclass
class FrobeniusReport:
    algebra: str
    projectives: list  # Γ_H labels
    injectives: list
    equal: bool
    closed: bool  # τ_H of a non-projective (a)-(d) object is again of type (a)-(d)
    formulas: dict  # label -> bool, closed-form τ_H agrees with the structural one

    @property
    def ok(self) -> bool:
        return self.equal and self.closed and all(self.formulas.values())

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "projectives": self.projectives, "injectives": self.injectives,
                "equal": self.equal, "closed": self.closed, "formulas": self.formulas, "ok": self.ok}


def _closed_form_tau(o: mh.MorphObject, t: str) -> Optional[mh.MorphObject]:
    x, y = o.x, o.y
    if t == "a" and not mc.is_projective_module(y):
        return mh.identity_object(mc.tau(y))
    if t == "b" and not mc.is_projective_module(x):
        return mh.to_zero(mc.tau(x))
    if t == "c":
        if mc.is_projective_module(x):
            return mh.zero_to(mc.nakayama(x))
        return mh._nakayama_map(mc.min_proj_presentation(x))
    if t == "d":
        return mh.zero_to(mc.tau(mc.cokernel(o.f)[0]))
    return None


def frobenius_check(alg: SCAlgebra, seed: int = 0, strict: bool = True) -> FrobeniusReport:
    _need_self_injective(alg)
    ex = mh.ex_structure(alg, seed)
    hq = ex.hq
    labels = hq.labels()
    closed, formulas = True, {}
    for i in ex.x_class:
        j = hq.quiver.tau_pairs.get(i)
        if j is None:
            continue
        closed &= hq.types[j] is not None
        expect = _closed_form_tau(hq.objects[i], hq.types[i])
        if expect is not None:
            formulas[labels[i]] = mh.is_iso_H(expect, hq.objects[j])
    rep = FrobeniusReport(alg.name, sorted(labels[i] for i in ex.projectives),
                          sorted(labels[i] for i in ex.injectives),
                          ex.projectives == ex.injectives, closed, formulas)
    if strict and not rep.ok:
        raise MismatchFailure(f"{alg.name}: Frobenius check failed")
    return rep


# ------------------------------------------------------------ 𝒜 = ν τ³


def a_functor(m: Module) -> Module:
    return mc.nakayama(mc.tau_power(m, 3))


def a_orbit(m: Module, seed: int = 0) -> list[Module]:
    _need_self_injective(m.alg)
    if mc.is_projective_module(m) or not mc.is_indecomposable(m, seed):
        raise ValueError("a_orbit needs an indecomposable non-projective module")
    orbit = [m]
    cur = a_functor(m)
    while not mc.is_isomorphic(cur, m, seed):
        orbit.append(cur)
        if len(orbit) > ORBIT_LIMIT:
            raise PeriodicityFailure(f"no return within {ORBIT_LIMIT} steps")
        cur = a_functor(cur)
    return orbit


def _nonprojectives(alg: SCAlgebra, seed: int) -> list[Module]:
    return [m for m in fc._indecomposables(alg, seed) if not mc.is_projective_module(m)]


def a_orbits(alg: SCAlgebra, seed: int = 0) -> list[list[int]]:
    """Partition of the non-projective indecomposables (by index) into 𝒜-orbits."""
    mods = _nonprojectives(alg, seed)
    left = list(range(len(mods)))
    out = []
    while left:
        orb = a_orbit(mods[left[0]], seed)
        members = [j for j in left if any(mc.is_isomorphic(mods[j], o, seed) for o in orb)]
        out.append(members)
        left = [j for j in left if j not in members]
    return out


# --------------------------------------------------------- periodicity


def _h_period(q: ARQuiverData, i: int) -> Optional[int]:
    j, n = q.tau_of(i), 1
    while j is not None and j != i and n <= len(q.vertices):
        j, n = q.tau_of(j), n + 1
    return n if j == i else None


def verify_prop_7_3(alg: SCAlgebra, seed: int = 0, strict: bool = False) -> list[fc.Report]:
    _need_self_injective(alg)
    hq = mh.ar_quiver_H(alg, seed=seed)
    q = hq.quiver
    out = []
    for n_mod in _nonprojectives(alg, seed):
        n = len(a_orbit(n_mod, seed))
        start = mh.zero_to(n_mod)
        four = mh.tau_H_power(start, 4)
        first = mh.is_iso_H(four, mh.zero_to(a_functor(n_mod)))
        full = mh.tau_H_power(four, 4 * n - 4) if n > 1 else four
        back = mh.is_iso_H(full, start)
        i = hq.index_of(start)
        orbit, j = [], i
        for _ in range(4 * n):
            orbit.append(j)
            j = q.tau_of(j)
            if j is None:
                break
        periods = {hq.labels()[k]: _h_period(q, k) for k in orbit}
        same = j == i and all(per is not None and (4 * n) % per == 0 for per in periods.values())
        types = sorted({hq.types[k] or "-" for k in orbit})
        rep = fc.Report("7.3", alg.name, aq.dim_vector(n_mod), f"orbit size {n}", first and back and same,
                        {"orbit_size": n, "tau4_is_A": first, "tau4n_fixes": back,
                         "periods": periods, "types_in_orbit": types})
        if strict and not rep.ok:
            raise PeriodicityFailure(f"{alg.name}: τ_H periodicity fails at {aq.dim_vector(n_mod)}")
        out.append(rep)
    return out


def tau_period(m: Module, limit: int = ORBIT_LIMIT, seed: int = 0) -> Optional[int]:
    cur = m
    for k in range(1, limit + 1):
        if mc.is_projective_module(cur):
            return None
        cur = mc.tau(cur)
        if mc.is_isomorphic(cur, m, seed):
            return k
    return None


def verify_thm_7_4(alg: SCAlgebra, seed: int = 0, strict: bool = False) -> list[fc.Report]:
    """τ_A-periods of the projective-dimension-two simples over the Auslander algebra."""
    _need_self_injective(alg)
    data = fc.auslander_algebra(alg, seed)
    a = data.alg
    out = []
    for v in range(a.nvert):
        s = mc.simple(a, v)
        if fc.projective_dimension(s) != 2:
            continue
        n = len(a_orbit(data.mods[v], seed))
        per = tau_period(s, seed=seed)
        fixes = per is not None and mc.is_isomorphic(mc.tau_power(s, 4 * n), s, seed)
        mod4 = per is not None and per % 4 == 0
        rep = fc.Report("7.4", alg.name, f"S at {aq.dim_vector(data.mods[v])}",
                        "periodic" if per else "not periodic", fixes,
                        {"period": per, "orbit_size": n, "period_mod_4": mod4, "tau_4n_fixes": fixes})
        if strict and not fixes:
            raise PeriodicityFailure(f"{alg.name}: simple at vertex {v} is not τ^(4n)-fixed")
        out.append(rep)
    return out


# ------------------------------------------------------------ property (*)


@dataclass
class Strip:
    module: Module
    objects: dict  # label -> MorphObject
    sequences: dict  # label -> verified flag
    tau_step: bool  # τ_H(ν P3 -> ν P2) ≅ (0 -> 𝒜 M)


def _strip(m: Module, universe, seed: int) -> Strip:
    alg = m.alg
    pres0 = mc.min_proj_presentation(m)
    om1 = pres0.omega
    pres1 = mc.min_proj_presentation(om1)
    om2 = pres1.omega
    pres2 = mc.min_proj_presentation(om2)
    eps = [mc.SES(pres0.omega_incl, pres0.pi), mc.SES(pres1.omega_incl, pres1.pi)]
    u1, v0, v1 = mh.morph(pres1.pi), mh.morph(pres0.omega_incl), mh.morph(pres1.omega_incl)
    w1 = mh.morph(pres0.d)
    p0, p1 = pres0.pi.source, pres1.pi.source
    nu_w3 = mh._nakayama_map(pres2)
    am = a_functor(m)
    objs = {"(0->ΩM)": mh.zero_to(om1), "(P1->P0)": w1, "(P2->Ω2M)": mh.morph(pres2.pi),
            "(Ω2M->P1)": v1, "(P1->ΩM)": u1, "(ΩM->P0)": v0, "(0->AM)": mh.zero_to(am), "(νP3->νP2)": nu_w3}
    shapes = {
        "end (ΩM->P0)": (v0, u1, [mh.identity_object(om1), w1]),
        "end (P1->P0)": (w1, mh.zero_to(om1), [u1, mh.zero_to(p0)]),
        "end (P1->ΩM)": (u1, v1, [mh.zero_to(om1), mh.identity_object(p1), mh.to_zero(om2)]),
        "end (Ω2M->0)": (mh.to_zero(om2), nu_w3, [v1, mh.to_zero(nu_w3.x)]),
    }
    seqs = {}
    explicit = mh.composite_ases(eps[0], eps[1])
    seqs["composite"] = mh.verify_almost_split_H(explicit, universe, seed=seed)
    for lab, (end, start, mids) in shapes.items():
        c = mh.almost_split_H(end, seed=seed)
        mid = mh.direct_sum_H([x for x in mids if not x.is_zero()])[0]
        seqs[lab] = (mh.is_iso_H(c.start, start) and mh.is_iso_H(c.middle, mid)
                     and mh.verify_almost_split_H(c, universe, seed=seed))
    step = mh.is_iso_H(mh.tau_H(nu_w3), mh.zero_to(am))
    return Strip(m, objs, seqs, step)


@dataclass
class CycleReport:
    algebra: str
    star_modules: list
    orbit: list
    strips_ok: bool
    cycle: bool
    cycle_length: int
    covered: bool  # glued strips account for every cycle vertex
    vertex_count: int
    direct_count: int
    finite_type: bool

    @property
    def ok(self) -> bool:
        return self.strips_ok and self.cycle and self.covered and self.finite_type

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in ("algebra", "star_modules", "orbit", "strips_ok", "cycle",
                                              "cycle_length", "covered", "vertex_count", "direct_count",
                                              "finite_type")} | {"ok": self.ok}


def is_oriented_cycle(q: ARQuiverData, verts: list[int]) -> bool:
    if not verts:
        return False
    vs = set(verts)
    ins = {v: 0 for v in verts}
    outs = {v: 0 for v in verts}
    for a, b, k in q.arrows:
        if a in vs and b in vs:
            outs[a] += k
            ins[b] += k
    if any(ins[v] != 1 or outs[v] != 1 for v in verts):
        return False
    # a single cycle: walking successors from any vertex visits all of them
    nxt = {a: b for a, b, _ in q.arrows if a in vs and b in vs}
    cur, seen = verts[0], set()
    while cur not in seen:
        seen.add(cur)
        cur = nxt[cur]
    return seen == vs


def thm_7_5_pipeline(alg: SCAlgebra, seed: int = 0) -> CycleReport:
    _need_self_injective(alg)
    mods = _nonprojectives(alg, seed)
    universe = fc._indecomposables(alg, seed)
    stars = [m for m in mods if aq.property_star(m, universe, seed)]
    if not stars:
        raise NoStarModule(f"{alg.name}: no indecomposable with property (*)")
    m = stars[0]
    orbit = a_orbit(m, seed)
    hq = mh.ar_quiver_H(alg, seed=seed)
    h_universe = hq.objects
    strips = [_strip(x, h_universe, seed) for x in orbit]
    strips_ok = all(all(s.sequences.values()) and s.tau_step for s in strips)
    ga = gamma_A(alg, seed)
    # projective-injective bookkeeping vertices Θ(0 -> P)
    pi = {k for k, fl in enumerate(ga.flags)
          if fl["type"] == "a" and mc.is_projective_module(hq.objects[ga.h_index[k]].y)}
    rest = [k for k in range(len(ga.vertices)) if k not in pi]
    cycle = is_oriented_cycle(ga, rest) and len(set(ga.components)) == 1
    strip_verts = set()
    for s in strips:
        for o in s.objects.values():
            i = hq.index_of(o)
            if i is None or i not in ga.h_to_a:
                raise StructureFailure(f"strip object {o.label()} is not a vertex of Γ_A")
            strip_verts.add(ga.h_to_a[i])
    direct = aq.ar_quiver(ga.alg, seed=seed)
    rep = CycleReport(alg.name, [aq.dim_vector(x) for x in stars], [aq.dim_vector(x) for x in orbit],
                      strips_ok, cycle, len(rest), strip_verts == set(rest), len(ga.vertices),
                      len(direct.vertices), ga.complete and direct.complete)
    if not rep.ok:
        raise StructureFailure(f"{alg.name}: Γ_A is not the glued oriented cycle")
    return rep


# ----------------------------------------------------------- components


@dataclass
class ComponentReport:
    component_id: int
    vertices: list
    finite: bool
    classification: str  # oriented-cycle, finite, tube-mouth-detected(rank r), unresolved-at-bound
    periods: dict = field(default_factory=dict)  # vertex -> τ-period or None
    whole: bool = False  # the component is all of the quiver

    def to_json(self) -> dict:
        return {"component": self.component_id, "vertices": self.vertices, "finite": self.finite,
                "classification": self.classification, "periods": {str(k): v for k, v in self.periods.items()},
                "whole": self.whole}


def component_classify(q: ARQuiverData, vertex: int) -> ComponentReport:
    if sum(q.vertices[vertex].dims) != 1:
        raise ValueError("component_classify starts from a simple vertex")
    cid = q.components[vertex]
    verts = [i for i, c in enumerate(q.components) if c == cid]
    periods = {i: _h_period(q, i) for i in verts}
    whole = len(verts) == len(q.vertices)
    if q.complete:
        kind = "oriented-cycle" if is_oriented_cycle(q, verts) else "finite"
        return ComponentReport(cid, verts, True, kind, periods, whole)
    # mouth candidates: τ-periodic vertices with a single predecessor orbit
    mouth = [i for i in verts if periods[i] and len(q.predecessors(i)) <= 1]
    if mouth:
        return ComponentReport(cid, verts, False, f"tube-mouth-detected({periods[mouth[0]]})", periods, whole)
    return ComponentReport(cid, verts, False, "unresolved-at-bound", periods, whole)


# ------------------------------------------------------------ orbit maps


@dataclass
class OrbitMapReport:
    algebra: str
    delta: dict  # orbit (tuple of dim vectors) -> Γ_H component
    lam: dict  # Γ_H component -> Γ_A component
    well_defined: bool
    surjective: bool
    infinite_components: list

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "delta": {" ".join(k): v for k, v in self.delta.items()},
                "lambda": {str(k): v for k, v in self.lam.items()}, "well_defined": self.well_defined,
                "surjective": self.surjective, "infinite_components": self.infinite_components}


def _connected(alg: SCAlgebra) -> bool:
    n = alg.nvert
    seen, todo = {0}, [0]
    while todo:
        v = todo.pop()
        for b in alg.radical_basis():
            s, t = alg.src[b], alg.tgt[b]
            for a, c in ((s, t), (t, s)):
                if a == v and c not in seen:
                    seen.add(c)
                    todo.append(c)
    return len(seen) == n


def orbit_maps(alg: SCAlgebra, seed: int = 0) -> OrbitMapReport:
    _need_self_injective(alg)
    if not _connected(alg):
        raise ValueError(f"{alg.name}: needs an indecomposable algebra")
    mods = _nonprojectives(alg, seed)
    if not mods:
        raise ValueError(f"{alg.name}: no non-projective indecomposable, the maps have empty domain")
    hq = mh.ar_quiver_H(alg, seed=seed)
    ga = gamma_A(alg, seed)
    hcomp = hq.quiver.components
    delta, lam, ok = {}, {}, True
    for orb in a_orbits(alg, seed):
        comps = {hcomp[hq.index_of(mh.zero_to(mods[j]))] for j in orb}
        ok &= len(comps) == 1
        delta[tuple(aq.dim_vector(mods[j]) for j in orb)] = min(comps)
    for m in mods:
        g = aq.almost_split_ending(m, seed).g
        i = hq.index_of(mh.morph(g))
        a_comp = ga.components[ga.h_to_a[i]]
        h = hcomp[hq.index_of(mh.zero_to(m))]
        if lam.setdefault(h, a_comp) != a_comp:
            ok = False
    simple_comps = {ga.components[k] for k, v in enumerate(ga.vertices) if sum(v.dims) == 1}
    surjective = set(lam.values()) == simple_comps
    infinite = [] if hq.quiver.complete else sorted(set(hcomp))
    rep = OrbitMapReport(alg.name, delta, lam, ok, surjective, infinite)
    if not ok:
        raise WellDefinednessFailure(f"{alg.name}: orbit maps are not well defined")
    return rep
