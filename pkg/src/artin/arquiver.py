"""Almost split sequences, indecomposable enumeration and AR quivers.

The enumeration is a closure: start from the indecomposable projectives and
injectives and keep adding neighbours (middle summands of almost split
sequences, τ, τ⁻¹, summands of rad P and I/soc I).  A closed set of
vertices is a union of finite AR components containing every projective,
which for a finite-dimensional algebra is the whole quiver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import exactlin as el
from . import modcat as mc
from .algebra import SCAlgebra
from .modcat import Module, ModuleMap, SES


class BoundExceeded(RuntimeError):
    """Closure did not stabilise: possibly infinite representation type."""


class SearchExhausted(RuntimeError):
    pass


class CrossCheckMismatch(RuntimeError):
    pass


DEFAULT_MAX_VERTICES = 512
DEFAULT_MAX_DIM = 64


def almost_split_ending(c: Module, seed: int = 0) -> SES:
    """The almost split sequence 0 -> τc -> E -> c -> 0.

    Picks the first vector of the End(c)-socle of Ext¹(c, τc), i.e. the
    classes killed by pulling back along every radical endomorphism of c.
    """
    key = ("ass", seed)
    if key in c._cache:
        return c._cache[key]
    if mc.is_projective_module(c):
        raise mc.IsProjective("no almost split sequence ends at a projective")
    t = mc.tau(c)
    data = mc.ext_data(c, t)
    e = data.basis.shape[0]
    if e == 0:
        raise SearchExhausted("Ext¹(c, τc) vanishes")
    rad = mc.radical_of_end(c, seed)
    acts = [mc.pullback_action(data, h) for h in rad]
    if acts:
        soc = el.nullspace(np.concatenate(acts, axis=0), c.p)
    else:
        soc = el.eye(e)
    if soc.shape[0] == 0:
        raise SearchExhausted("Ext socle is zero")
    vec = el.row_basis(soc, c.p)[0]
    xi = el.matmul(vec.reshape(1, -1), data.basis, c.p)[0]
    s = mc.realize_extension(data, xi)
    c._cache[key] = s
    return s


def radical_maps(z: Module, c: Module, seed: int = 0) -> np.ndarray:
    """Rows spanning rad(z, c): all maps when z ≇ c, non-isomorphisms otherwise."""
    hs = mc.hom_space(z, c)
    if hs.shape[0] == 0 or z.dims != c.dims:
        return hs
    if not mc.is_indecomposable(c, seed):
        raise mc.NotIndecomposable("end term must be indecomposable")
    phi = mc.find_iso(z, c)
    if phi is None:
        return hs
    rows = [(phi @ r).flat() for r in mc.radical_of_end(z, seed)]
    return np.array(rows, dtype=np.int64).reshape(-1, hs.shape[1])


def verify_almost_split(s: SES, universe: list[Module], seed: int = 0) -> bool:
    """Definition check: nonsplit, indecomposable ends, deflation right almost split."""
    if not s.is_exact() or mc.is_split(s):
        return False
    if not mc.is_indecomposable(s.start, seed) or not mc.is_indecomposable(s.end, seed):
        return False
    c, b, p = s.end, s.middle, s.end.p
    for z in universe:
        if z.alg is not c.alg:
            raise ValueError("universe lives over another algebra")
        rad = radical_maps(z, c, seed)
        if rad.shape[0] == 0:
            continue
        hb = mc.hom_space(z, b)
        imgs = [(s.g @ mc.map_from_flat(z, b, r)).flat() for r in hb]
        img = np.array(imgs, dtype=np.int64).reshape(-1, rad.shape[1])
        if el.rank(np.concatenate([img, rad], axis=0), p) != el.rank(img, p):
            return False
    return True


def is_right_almost_split(g: ModuleMap, universe: list[Module], seed: int = 0) -> bool:
    c, b = g.target, g.source
    for z in universe:
        rad = radical_maps(z, c, seed)
        if rad.shape[0] == 0:
            continue
        hb = mc.hom_space(z, b)
        imgs = [(g @ mc.map_from_flat(z, b, r)).flat() for r in hb]
        img = np.array(imgs, dtype=np.int64).reshape(-1, rad.shape[1])
        if el.rank(np.concatenate([img, rad], axis=0), c.p) != el.rank(img, c.p):
            return False
    return True


# -------------------------------------------------------------- enumeration


class IsoIndex:
    """Iso-class registry: list of representatives plus signature buckets."""

    def __init__(self):
        self.items: list[Module] = []
        self._buckets: dict = {}

    def find(self, m: Module) -> Optional[int]:
        for i in self._buckets.get(m.signature(), []):
            if mc.is_isomorphic(self.items[i], m):
                return i
        return None

    def add(self, m: Module) -> tuple[int, bool]:
        i = self.find(m)
        if i is not None:
            return i, False
        self.items.append(m)
        self._buckets.setdefault(m.signature(), []).append(len(self.items) - 1)
        return len(self.items) - 1, True

    def __len__(self):
        return len(self.items)


@dataclass
class ARQuiverData:
    alg: SCAlgebra
    vertices: list
    arrows: list  # (source, target, multiplicity)
    tau_pairs: dict  # non-projective index -> index of its translate
    components: list  # component id per vertex
    flags: list  # per vertex: dict with projective / injective / extra tags
    ases: dict = field(default_factory=dict)  # end index -> SES
    complete: bool = True

    def tau_of(self, i: int) -> Optional[int]:
        return self.tau_pairs.get(i)

    def tau_inv_of(self, i: int) -> Optional[int]:
        for a, b in self.tau_pairs.items():
            if b == i:
                return a
        return None

    def index_of(self, m: Module) -> Optional[int]:
        for i, v in enumerate(self.vertices):
            if mc.is_isomorphic(v, m):
                return i
        return None

    def predecessors(self, i: int) -> list:
        return [(s, k) for s, t, k in self.arrows if t == i]

    def successors(self, i: int) -> list:
        return [(t, k) for s, t, k in self.arrows if s == i]


def _build(alg: SCAlgebra, max_vertices: int, max_dim: int, seed: int, strict: bool):
    idx = IsoIndex()
    queue: list[int] = []
    ases: dict = {}
    arrows: dict = {}
    tau_pairs: dict = {}
    flags: dict = {}

    def register(m: Module) -> int:
        if m.dim > max_dim:
            raise BoundExceeded(f"module of dimension {m.dim} exceeds {max_dim}")
        i, new = idx.add(m)
        if new:
            if len(idx) > max_vertices:
                raise BoundExceeded(f"more than {max_vertices} indecomposables")
            queue.append(i)
        return i

    complete = True
    try:
        for m in mc.indec_projectives(alg):
            if not m.is_zero():
                register(m)
        for m in mc.indec_injectives(alg):
            if not m.is_zero():
                register(m)
        head = 0
        while head < len(queue):
            i = queue[head]
            head += 1
            x = idx.items[i]
            proj = mc.is_projective_module(x)
            inj = mc.is_injective_module(x)
            flags[i] = {"projective": proj, "injective": inj}
            if proj:
                r = mc.radical(x)[0]
                for y, k in (mc.decompose(r, seed) if not r.is_zero() else []):
                    arrows[(register(y), i)] = k
            else:
                s = almost_split_ending(x, seed)
                j = register(s.start)
                tau_pairs[i] = j
                ases[i] = s
                for y, k in mc.decompose(s.middle, seed):
                    arrows[(register(y), i)] = k
            if inj:
                q = mc.cokernel(mc.socle(x)[1])[0]
                for y, k in (mc.decompose(q, seed) if not q.is_zero() else []):
                    register(y)
            else:
                register(mc.tau_inv(x))
    except BoundExceeded:
        if strict:
            raise
        complete = False
    n = len(idx)
    comp = list(range(n))

    def find(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    for (a, b) in arrows:
        comp[find(a)] = find(b)
    for a, b in tau_pairs.items():
        comp[find(a)] = find(b)
    roots: dict = {}
    comp_ids = []
    for i in range(n):
        r = find(i)
        roots.setdefault(r, len(roots))
        comp_ids.append(roots[r])
    arrow_list = sorted((a, b, k) for (a, b), k in arrows.items())
    fl = [flags.get(i, {"projective": mc.is_projective_module(idx.items[i]),
                        "injective": mc.is_injective_module(idx.items[i])}) for i in range(n)]
    return ARQuiverData(alg, list(idx.items), arrow_list, tau_pairs, comp_ids, fl, ases, complete)


def ar_quiver(alg: SCAlgebra, max_vertices: int = DEFAULT_MAX_VERTICES, max_dim: int = DEFAULT_MAX_DIM,
              seed: int = 0, strict: bool = True) -> ARQuiverData:
    key = ("arq", max_vertices, max_dim, seed, strict)
    if key not in alg._cache:
        alg._cache[key] = _build(alg, max_vertices, max_dim, seed, strict)
    return alg._cache[key]


class IndecList(list):
    complete: bool = True


def enumerate_indecomposables(alg: SCAlgebra, max_vertices: int = DEFAULT_MAX_VERTICES,
                              max_dim: int = DEFAULT_MAX_DIM, seed: int = 0, strict: bool = True) -> IndecList:
    q = ar_quiver(alg, max_vertices, max_dim, seed, strict)
    out = IndecList(q.vertices)
    out.complete = q.complete
    return out


# ------------------------------------------------------------- property (*)


def property_star(m: Module, universe: Optional[list] = None, seed: int = 0) -> bool:
    if mc.is_projective_module(m):
        raise mc.IsProjective("property (*) concerns non-projective modules")
    if universe is None:
        universe = enumerate_indecomposables(m.alg, seed=seed)
    pres = mc.min_proj_presentation(m)
    s = SES(pres.omega_incl, pres.pi)
    by_definition = verify_almost_split(s, universe, seed)
    by_classification = star_by_classification(m)
    if by_definition != by_classification:
        raise CrossCheckMismatch(f"property (*) disagrees: definition {by_definition}, "
                                 f"classification {by_classification}")
    return by_definition


def star_by_classification(m: Module) -> bool:
    """Non-injective simple, not a composition factor of rad(I)/soc(I) for any injective I."""
    alg = m.alg
    if m.dim != 1 or mc.is_injective_module(m):
        return False
    v = m.dims.index(1)
    for inj in mc.indec_injectives(alg):
        r, r_incl = mc.radical(inj)
        s_incl = mc.socle(inj)[1]
        # soc(I) ∩ rad(I), computed inside rad(I)
        meet = [el.intersect_rows(r_incl.comps[u].T, s_incl.comps[u].T, alg.p)
                if r_incl.comps[u].size and s_incl.comps[u].size else el.zeros(0, inj.dims[u])
                for u in range(alg.nvert)]
        if r.dims[v] - meet[v].shape[0] > 0:
            return False
    return True


# ------------------------------------------------------------------- export


def dim_vector(m: Module) -> str:
    return "(" + ",".join(str(d) for d in m.dims) + ")"


def export_order(q: ARQuiverData) -> list[int]:
    return sorted(range(len(q.vertices)), key=lambda i: (q.vertices[i].dims, i))


def to_dot(q: ARQuiverData, name: str = "AR", labels: Optional[list] = None,
           ghost: Optional[set] = None) -> str:
    order = export_order(q)
    ren = {i: k for k, i in enumerate(order)}
    ghost = ghost or set()
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for i in order:
        fl = q.flags[i]
        tags = [t for t in ("projective", "injective") if fl.get(t)]
        if fl.get("type"):
            tags.append(f"type {fl['type']}")
        lab = labels[i] if labels else dim_vector(q.vertices[i])
        text = lab + ("\\n" + ",".join(tags) if tags else "")
        style = ', style=dashed, color=gray' if i in ghost else ""
        lines.append(f'  v{ren[i]} [label="{text}"{style}];')
    for a, b, k in sorted(q.arrows, key=lambda t: (ren[t[0]], ren[t[1]])):
        lab = f' [label="{k}"]' if k > 1 else ""
        lines.append(f"  v{ren[a]} -> v{ren[b]}{lab};")
    for a, b in sorted(q.tau_pairs.items(), key=lambda t: ren[t[0]]):
        lines.append(f"  v{ren[a]} -> v{ren[b]} [style=dashed, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(q: ARQuiverData, labels: Optional[list] = None) -> dict:
    order = export_order(q)
    ren = {i: k for k, i in enumerate(order)}
    verts = []
    for i in order:
        entry = {"id": ren[i], "dims": list(q.vertices[i].dims), "component": q.components[i],
                 "flags": {k: v for k, v in sorted(q.flags[i].items())},
                 "module": q.vertices[i].to_json()}
        if labels:
            entry["label"] = labels[i]
        verts.append(entry)
    return {
        "complete": q.complete,
        "vertices": verts,
        "arrows": sorted([ren[a], ren[b], k] for a, b, k in q.arrows),
        "tau": sorted([ren[a], ren[b]] for a, b in q.tau_pairs.items()),
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"
