"""Command-line front end: ``artin indec|ar|verify|wide|report``.

Exit codes: 0 pass, 1 input error, 2 bound exceeded, 3 vacuous (every
instance excluded by a precondition), 4 a verified claim failed.
"""
from __future__ import annotations

import hashlib
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Callable, Optional

import click

from . import __version__
from . import algebra as ab
from . import arquiver as aq
from . import auslander as au
from . import functcat as fc
from . import modcat as mc
from . import morphcat as mh
from . import widecat as wc

EXIT_OK, EXIT_INPUT, EXIT_BOUND, EXIT_VACUOUS, EXIT_FAIL = 0, 1, 2, 3, 4

THEOREMS = ("4.2k", "4.6", "4.9", "5.6", "5.9", "5.11", "6.2", "6.3", "6.5",
            "7.3", "7.4", "7.5", "7.7", "7.9")

ZOO = {
    "field": lambda p: ab.field_algebra(int(p)),
    "trunc": lambda p, n: ab.truncated_polynomial(int(p), int(n)),
    "a2": lambda p: ab.linear_a2(int(p)),
}


class Vacuous(Exception):
    pass


# ----------------------------------------------------------------- input


def read_spec(source: str) -> str:
    """Spec text for a file path or a zoo name such as ``trunc:3:2``."""
    head = source.split(":")[0]
    if head in ZOO and not os.path.exists(source):
        return "zoo:" + source
    with open(source) as fh:
        return fh.read()


def build(text: str) -> ab.BQAlgebra:
    if text.startswith("zoo:"):
        kind, *args = text[4:].split(":")
        try:
            return ZOO[kind](*args)
        except (TypeError, ValueError) as exc:
            raise ab.SpecError(f"bad zoo name {text[4:]!r}: {exc}") from None
    return ab.load_algebra(text)


# ---------------------------------------------------------------- cache


class Workspace:
    """Artifacts keyed by the hash of the algebra spec and the tool version."""

    def __init__(self, root: Optional[str] = None, enabled: bool = True):
        root = root or os.environ.get("ARTIN_CACHE") or str(Path.home() / ".cache" / "artin")
        self.root = Path(root)
        self.enabled = enabled

    @staticmethod
    def spec_hash(text: str) -> str:
        if text.startswith("zoo:"):
            norm = text
        else:
            norm = json.dumps(json.loads(text), sort_keys=True)
        return hashlib.sha256(norm.encode()).hexdigest()[:16]

    def _path(self, text: str, what: str) -> Path:
        key = hashlib.sha256(f"{__version__}|{self.spec_hash(text)}|{what}".encode()).hexdigest()[:24]
        return self.root / __version__ / f"{key}.json"

    def get(self, text: str, what: str) -> Optional[dict]:
        if not self.enabled:
            return None
        path = self._path(text, what)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, text: str, what: str, value: dict):
        if not self.enabled:
            return
        path = self._path(text, what)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(json.dumps(value, sort_keys=True))
            tmp.replace(path)
        except OSError:
            pass  # a read-only cache directory is not fatal

    def cached(self, text: str, what: str, compute: Callable[[], dict]) -> dict:
        hit = self.get(text, what)
        if hit is not None:
            return hit
        value = compute()
        self.put(text, what, value)
        return value


# ------------------------------------------------------------ quivers


def _mod_quiver(alg, seed, structure):
    q = aq.ar_quiver(alg, seed=seed)
    return q, None, set()


def _h_quiver(alg, seed, structure):
    hq = mh.ar_quiver_H(alg, seed=seed)
    q = hq.quiver
    if structure == "canonical":
        return q, hq.labels(), set()
    if structure == "cw":
        drop = {i for i, t in enumerate(hq.types) if t in ("a", "b")}
    else:
        drop = mh.ex_structure(alg, seed).projectives
    tau = {a: b for a, b in q.tau_pairs.items() if a not in drop}
    view = aq.ARQuiverData(q.alg, q.vertices, q.arrows, tau, q.components, q.flags, {}, q.complete)
    return view, hq.labels(), set()


def _a_quiver(alg, seed, show_removed):
    ga = au.gamma_A(alg, seed)
    if not show_removed:
        return ga, [aq.dim_vector(v) for v in ga.vertices], set()
    hq = ga.hq
    labels = [aq.dim_vector(ga.vertices[ga.h_to_a[i]]) if i in ga.h_to_a else hq.labels()[i]
              for i in range(len(hq.objects))]
    ghost = {i for i in range(len(hq.objects)) if i not in ga.h_to_a}
    return hq.quiver, labels, ghost


def _as_quiver(alg, seed, show_removed):
    gs = au.gamma_A_stable(alg, seed)
    if not show_removed:
        return gs, [aq.dim_vector(v) for v in gs.vertices], set()
    ga = gs.parent
    return ga, [aq.dim_vector(v) for v in ga.vertices], set(gs.removed)


def render_ar(text: str, category: str, structure: str, fmt: str, show_removed: bool, seed: int) -> str:
    alg = build(text)
    if category == "mod":
        q, labels, ghost = _mod_quiver(alg, seed, structure)
    elif category == "H":
        q, labels, ghost = _h_quiver(alg, seed, structure)
    elif category == "A":
        q, labels, ghost = _a_quiver(alg, seed, show_removed)
    else:
        q, labels, ghost = _as_quiver(alg, seed, show_removed)
    name = f"{category}({alg.name})"
    if fmt == "dot":
        return aq.to_dot(q, name, labels, ghost)
    data = aq.to_json(q, labels)
    data["name"] = name
    if ghost:
        order = aq.export_order(q)
        ren = {i: k for k, i in enumerate(order)}
        data["removed"] = sorted(ren[i] for i in ghost)
    return aq.dumps(data)


# ------------------------------------------------------------ verifiers


def _rows(reports) -> list[dict]:
    return [r.to_json() for r in reports]


def _needs_self_injective(alg):
    if not mc.self_injective(alg):
        raise Vacuous("algebra is not self-injective")


def _v_kernel(alg, seed):
    return _rows([fc.verify_kernel_law(alg, seed)])


def _v_4_6(alg, seed):
    rows = [r for r in mh.verify_cor_4_6(alg, seed) if r["applies"]]
    if not rows:
        raise Vacuous("no almost split sequence meets the type conditions")
    return [{"theorem": "4.6", "algebra": alg.name, "input": f"{r['start']} -> {r['end']}",
             "branch": "degreewise split", "ok": r["split"], "dims": {}} for r in rows]


def _v_4_9(alg, seed):
    rows = [r for r in fc.verify_thm_4_9(alg, seed) if not r.branch.startswith("excluded")]
    if not rows:
        raise Vacuous("no cw almost split conflation with an admissible end")
    return _rows(rows)


def _v_5_6(alg, seed):
    spec = wc.whole_category(alg, seed)
    proj, _ = wc.relative_proj_inj(spec)
    out = []
    for i, x in enumerate(spec.generators):
        if i in proj:
            continue
        r = wc.verify_cor_5_6(spec, x, seed)
        out.append({"theorem": "5.6", "algebra": alg.name, "input": aq.dim_vector(x),
                    "branch": "exact", "ok": r.ok, "dims": r.dims})
    if not out:
        raise Vacuous("every indecomposable is projective")
    return out


def _v_5_9(alg, seed):
    spec = wc.whole_category(alg, seed)
    table = wc.sigma_X(spec, seed)
    return [{"theorem": "5.9", "algebra": alg.name, "input": aq.dim_vector(x),
             "branch": table.route[i], "ok": table.images[i] == i,
             "dims": {"image": aq.dim_vector(spec.generators[table.images[i]])}}
            for i, x in enumerate(spec.generators)]


def _v_5_11(alg, seed):
    return _rows(fc.verify_cor_5_11(alg, m, seed) for m in fc._indecomposables(alg, seed))


def _v_6_2(alg, seed):
    data = fc.stable_auslander(alg, seed)
    verts = [v for v in range(data.alg.nvert) if not mc.is_projective_module(mc.simple(data.alg, v))]
    if not verts:
        raise Vacuous("no non-projective simple over the stable Auslander algebra")
    return _rows(fc.verify_thm_6_2(alg, v, seed) for v in verts)


def _v_6_3(alg, seed):
    c = fc.n_lambda(alg, seed)
    return [{"theorem": "6.3", "algebra": alg.name, "input": "sets", "branch": "bijections", "ok": True,
             "dims": {"n": c.n, "sizes": [len(c.set1), len(c.set2), len(c.set3)]}}]


def _v_6_5(alg, seed):
    _needs_self_injective(alg)
    a = fc.auslander_algebra(alg, seed).alg
    verts = [v for v in range(a.nvert) if fc.projective_dimension(mc.simple(a, v)) == 2]
    if not verts:
        raise Vacuous("no simple of projective dimension two")
    return _rows(fc.verify_thm_6_5(alg, v, seed) for v in verts)


def _v_7_3(alg, seed):
    _needs_self_injective(alg)
    rows = au.verify_prop_7_3(alg, seed)
    if not rows:
        raise Vacuous("no non-projective indecomposable")
    return _rows(rows)


def _v_7_4(alg, seed):
    _needs_self_injective(alg)
    rows = au.verify_thm_7_4(alg, seed)
    if not rows:
        raise Vacuous("no simple of projective dimension two")
    return _rows(rows)


def _v_7_5(alg, seed):
    _needs_self_injective(alg)
    try:
        r = au.thm_7_5_pipeline(alg, seed)
    except au.NoStarModule as exc:
        raise Vacuous(str(exc)) from None
    except au.StructureFailure as exc:
        return [{"theorem": "7.5", "algebra": alg.name, "input": "Γ_A", "branch": "cycle", "ok": False,
                 "dims": {"error": str(exc)}}]
    return [{"theorem": "7.5", "algebra": alg.name, "input": "Γ_A", "branch": "cycle", "ok": r.ok,
             "dims": r.to_json()}]


def _v_7_7(alg, seed):
    _needs_self_injective(alg)
    r = au.frobenius_check(alg, seed, strict=False)
    return [{"theorem": "7.7", "algebra": alg.name, "input": "P(H_X) = I(H_X)", "branch": "frobenius",
             "ok": r.ok, "dims": r.to_json()}]


def _v_7_9(alg, seed):
    _needs_self_injective(alg)
    if not au._nonprojectives(alg, seed):
        raise Vacuous("no non-projective indecomposable")
    try:
        r = au.orbit_maps(alg, seed)
    except au.WellDefinednessFailure as exc:
        return [{"theorem": "7.9", "algebra": alg.name, "input": "δ, λ", "branch": "maps", "ok": False,
                 "dims": {"error": str(exc)}}]
    return [{"theorem": "7.9", "algebra": alg.name, "input": "δ, λ", "branch": "maps",
             "ok": r.well_defined and r.surjective, "dims": r.to_json()}]


VERIFIERS = {"4.2k": _v_kernel, "4.6": _v_4_6, "4.9": _v_4_9, "5.6": _v_5_6, "5.9": _v_5_9,
             "5.11": _v_5_11, "6.2": _v_6_2, "6.3": _v_6_3, "6.5": _v_6_5, "7.3": _v_7_3,
             "7.4": _v_7_4, "7.5": _v_7_5, "7.7": _v_7_7, "7.9": _v_7_9}


def run_theorem(text: str, theorem: str, seed: int) -> dict:
    """One theorem on one algebra; never raises, the status carries the exit class."""
    try:
        alg = build(text)
        rows = VERIFIERS[theorem](alg, seed)
        status = EXIT_OK if all(r["ok"] for r in rows) else EXIT_FAIL
        return {"theorem": theorem, "status": status, "rows": rows}
    except Vacuous as exc:
        return {"theorem": theorem, "status": EXIT_VACUOUS, "rows": [], "reason": str(exc)}
    except (aq.BoundExceeded, fc.NotFiniteType, ab.InfiniteDimensional) as exc:
        return {"theorem": theorem, "status": EXIT_BOUND, "rows": [], "reason": str(exc)}
    except ab.SpecError as exc:
        return {"theorem": theorem, "status": EXIT_INPUT, "rows": [], "reason": str(exc)}
    except (RuntimeError, ValueError, ArithmeticError) as exc:
        return {"theorem": theorem, "status": EXIT_FAIL, "rows": [],
                "reason": f"{type(exc).__name__}: {exc}"}


def run_many(text: str, theorems, seed: int, jobs: int, ws: Workspace) -> list[dict]:
    todo = [t for t in theorems if ws.get(text, f"verify:{t}:{seed}") is None]
    fresh = {}
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = {t: pool.submit(run_theorem, text, t, seed) for t in todo}
            fresh = {t: f.result() for t, f in futs.items()}
    else:
        fresh = {t: run_theorem(text, t, seed) for t in todo}
    out = []
    for t in theorems:
        if t in fresh:
            res = fresh[t]
            if res["status"] in (EXIT_OK, EXIT_VACUOUS, EXIT_FAIL):
                ws.put(text, f"verify:{t}:{seed}", res)
        else:
            res = ws.get(text, f"verify:{t}:{seed}")
        out.append(res)
    return out


def combine(statuses) -> int:
    statuses = list(statuses)
    for code in (EXIT_INPUT, EXIT_FAIL, EXIT_BOUND):
        if code in statuses:
            return code
    if statuses and all(s == EXIT_VACUOUS for s in statuses):
        return EXIT_VACUOUS
    return EXIT_OK


def verdict_lines(res: dict) -> list[str]:
    if not res["rows"]:
        tag = {EXIT_VACUOUS: "VACUOUS", EXIT_BOUND: "BOUND", EXIT_INPUT: "ERROR"}.get(res["status"], "FAIL")
        return [f"{res['theorem']:>5}  {tag}  {res.get('reason', '')}"]
    return [f"{r['theorem']:>5}  {'PASS' if r['ok'] else 'FAIL'}  {r['input']}  [{r['branch']}]"
            for r in res["rows"]]


# -------------------------------------------------------------- commands


def _load_or_exit(source: str) -> str:
    try:
        text = read_spec(source)
        build(text)
        return text
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_INPUT)
    except ab.InfiniteDimensional as exc:
        click.echo(f"bound: {exc}", err=True)
        sys.exit(EXIT_BOUND)
    except ab.SpecError as exc:
        click.echo(f"error: {source}: {exc}", err=True)
        sys.exit(EXIT_INPUT)


def _emit(text: str, out: Optional[str]):
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


@click.group()
@click.option("--seed", default=0, show_default=True, help="Seed for randomized decompositions.")
@click.option("--jobs", default=1, show_default=True, help="Parallel verification jobs.")
@click.option("--no-cache", is_flag=True, help="Ignore and do not write the artifact cache.")
@click.version_option(__version__)
@click.pass_context
def main(ctx, seed, jobs, no_cache):
    """AR theory of bound quiver algebras, morphism categories and Auslander algebras."""
    ctx.obj = {"seed": seed, "jobs": max(1, jobs), "ws": Workspace(enabled=not no_cache)}


@main.command()
@click.argument("algebra")
@click.option("--max-vertices", default=aq.DEFAULT_MAX_VERTICES, show_default=True)
@click.option("--max-dim", default=aq.DEFAULT_MAX_DIM, show_default=True)
@click.pass_obj
def indec(obj, algebra, max_vertices, max_dim):
    """List indecomposable modules by dimension vector."""
    text = _load_or_exit(algebra)
    alg = build(text)
    q = aq.ar_quiver(alg, max_vertices, max_dim, obj["seed"], strict=False)
    for i in aq.export_order(q):
        fl = q.flags[i]
        tags = ",".join(t for t in ("projective", "injective") if fl.get(t))
        click.echo(f"{aq.dim_vector(q.vertices[i])}  {tags}".rstrip())
    n = len(q.vertices)
    noun = "indecomposable" if n == 1 else "indecomposables"
    click.echo(f"{n} {noun}, {'complete' if q.complete else 'bound exceeded'}")
    sys.exit(EXIT_OK if q.complete else EXIT_BOUND)


@main.command()
@click.argument("algebra")
@click.option("--category", type=click.Choice(["mod", "H", "A", "As"]), default="mod", show_default=True)
@click.option("--structure", type=click.Choice(["canonical", "cw", "ex"]), default="canonical",
              show_default=True, help="Exact structure on H (translation arrows shown).")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default=None,
              help="Defaults to the --out suffix, else dot.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.option("--show-removed", is_flag=True, help="Ghost the vertices deleted for A / As.")
@click.pass_obj
def ar(obj, algebra, category, structure, fmt, out, show_removed):
    """Emit an AR quiver as DOT or JSON."""
    text = _load_or_exit(algebra)
    fmt = fmt or ("json" if out and out.endswith(".json") else "dot")
    what = f"ar:{category}:{structure}:{fmt}:{show_removed}:{obj['seed']}"
    try:
        res = obj["ws"].cached(text, what, lambda: {
            "text": render_ar(text, category, structure, fmt, show_removed, obj["seed"])})
    except (aq.BoundExceeded, fc.NotFiniteType) as exc:
        click.echo(f"bound: {exc}", err=True)
        sys.exit(EXIT_BOUND)
    _emit(res["text"], out)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("algebra")
@click.option("--theorem", "theorems", multiple=True, type=click.Choice(THEOREMS), required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the JSON report here.")
@click.pass_obj
def verify(obj, algebra, theorems, out):
    """Check theorem instances; one verdict line per instance."""
    text = _load_or_exit(algebra)
    results = run_many(text, list(dict.fromkeys(theorems)), obj["seed"], obj["jobs"], obj["ws"])
    for res in results:
        for line in verdict_lines(res):
            click.echo(line)
    report = aq.dumps({"algebra": build(text).name, "results": results})
    if out:
        Path(out).write_text(report)
    else:
        click.echo(report, nl=False)
    sys.exit(combine(r["status"] for r in results))


@main.command()
@click.argument("algebra")
@click.option("--gens", default=None, help="Comma-separated indices into `indec` order; default all.")
@click.pass_obj
def wide(obj, algebra, gens):
    """Wideness test, relative projectives/injectives and the σ_X table."""
    text = _load_or_exit(algebra)
    alg = build(text)
    seed = obj["seed"]
    mods = fc._indecomposables(alg, seed)
    try:
        picked = [mods[int(i)] for i in gens.split(",")] if gens else mods
    except (ValueError, IndexError):
        click.echo(f"error: bad --gens {gens!r} ({len(mods)} indecomposables)", err=True)
        sys.exit(EXIT_INPUT)
    spec = wc.SubcatSpec(picked, name=f"add({gens or 'all'})")
    rep = wc.is_wide(spec, seed)
    data = {"algebra": alg.name, "generators": [aq.dim_vector(m) for m in picked], "wide": rep.wide}
    if rep.wide:
        proj, inj = wc.relative_proj_inj(spec)
        table = wc.sigma_X(spec, seed)
        data.update(relative_projectives=proj, relative_injectives=inj, sigma=table.images,
                    sigma_identity=table.is_identity(), routes=table.route)
    else:
        data["witness"] = rep.witness
    click.echo(aq.dumps(data), nl=False)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("algebra")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def report(obj, algebra, out):
    """Run every theorem check and summarise."""
    text = _load_or_exit(algebra)
    results = run_many(text, list(THEOREMS), obj["seed"], obj["jobs"], obj["ws"])
    summary = {"algebra": build(text).name,
               "theorems": {r["theorem"]: {0: "pass", 2: "bound", 3: "vacuous", 4: "fail", 1: "error"}[r["status"]]
                            for r in results},
               "results": results}
    for res in results:
        for line in verdict_lines(res):
            click.echo(line)
    text_out = aq.dumps(summary)
    if out:
        Path(out).write_text(text_out)
    codes = [r["status"] for r in results if r["status"] != EXIT_VACUOUS] or [EXIT_VACUOUS]
    sys.exit(combine(codes))


if __name__ == "__main__":
    main()
