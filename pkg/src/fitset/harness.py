"""Corpus loading, suite execution and report emission."""

from __future__ import annotations

import fnmatch
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Iterator

import jsonschema

from . import __version__
from .errors import ArgumentError, FitsetError, ParseError
from .fitting import FittingSet, product_with_class, slr, verify_axioms
from .group import Group, PrimeSet, parse_group, sigma_primes
from .injectors import (
    TheoremReport,
    counterexample_search,
    lemma_2_2_suite,
    verify_prop_5_6,
    verify_theorem_a,
    verify_theorem_b,
)
from .lattice import SubgroupLattice, all_subgroups
from .specs import (
    _extra_prime,
    catalog_classes,
    generated_hfunctions,
    generated_sets,
    parse_fitting_set,
    prime_subsets,
)
from . import statements as st

SCHEMA_VERSION = "1.0"
ORACLE_MAX_ORDER = 24
PRODUCTS_MAX_ORDER = 48

SUITES = (
    "lattice-invariants",
    "fitting-axioms",
    "lemma-2",
    "products",
    "semilocal",
    "constraint",
    "theorem-a",
    "theorem-b",
    "prop-5-6",
    "corollaries",
    "degenerations",
    "counterexample-search",
)


def _schema(name: str) -> dict:
    return json.loads(resources.files("fitset.data").joinpath(name).read_text())


def default_corpus() -> Path:
    return Path(str(resources.files("fitset.data").joinpath("corpus")))


@dataclass
class CorpusEntry:
    name: str
    group_spec: dict
    fitting_specs: list[dict] = field(default_factory=list)
    suites: list[dict] = field(default_factory=list)
    digest: str = ""


def load_corpus(path: str | Path) -> list[CorpusEntry]:
    """Parse every ``*.json`` in ``path`` in filename order."""
    path = Path(path)
    if not path.is_dir():
        raise ParseError(f"{path}: corpus directory not found")
    schema = _schema("corpus-entry.schema.json")
    out = []
    for fn in sorted(path.glob("*.json")):
        raw = fn.read_bytes()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{fn}:{exc.lineno}: {exc.msg}") from None
        try:
            jsonschema.validate(doc, schema)
        except jsonschema.ValidationError as exc:
            where = "/".join(map(str, exc.absolute_path)) or "<root>"
            raise ParseError(f"{fn}: {where}: {exc.message}") from None
        out.append(CorpusEntry(fn.name, doc["group"], doc.get("fitting_sets", []),
                               doc.get("suites", []), hashlib.sha256(raw).hexdigest()))
    return out


def corpus_digest(entries: Iterable[CorpusEntry]) -> str:
    h = hashlib.sha256()
    for e in entries:
        h.update(e.name.encode())
        h.update(e.digest.encode())
    return h.hexdigest()


def select_suites(patterns: Iterable[str] | None) -> list[str]:
    """Suite names matched by glob patterns; a literal unknown name is an error."""
    if patterns is None:
        return list(SUITES)
    chosen = set()
    for pat in patterns:
        pat = pat.strip()
        if not pat:
            continue
        hits = fnmatch.filter(SUITES, pat)
        if not hits and not any(ch in pat for ch in "*?["):
            raise ArgumentError(f"unknown suite {pat!r}; known: {', '.join(SUITES)}")
        chosen.update(hits)
    return [s for s in SUITES if s in chosen]


# ---------------------------------------------------------------------------
# suites


def closed_subsets_oracle(G: Group) -> set[frozenset[int]]:
    """All subgroups by include/exclude search over elements with plain sets.

    Shares no code with the lattice builder: products are looked up in the
    table one pair at a time.
    """
    mul = G.mul_table.tolist()
    n = G.order
    found: set[frozenset[int]] = set()

    def close(S: set[int]) -> set[int]:
        S = set(S)
        frontier = list(S)
        while frontier:
            new = []
            for a in frontier:
                for b in list(S):
                    for c in (mul[a][b], mul[b][a]):
                        if c not in S:
                            S.add(c)
                            new.append(c)
            frontier = new
        return S

    def search(S: set[int], excluded: frozenset[int]) -> None:
        rest = [x for x in range(n) if x not in S and x not in excluded]
        if not rest:
            found.add(frozenset(S))
            return
        x = rest[0]
        T = close(S | {x})
        if not T & excluded:
            search(T, excluded)
        search(S, excluded | {x})

    search({0}, frozenset())
    return found


def _lattice_report(lat: SubgroupLattice) -> TheoremReport:
    G = lat.group
    rep = TheoremReport("lattice-invariants", context={"group": G.name, "order": G.order,
                                                        "subgroups": len(lat)})
    if G.order <= ORACLE_MAX_ORDER:
        oracle = {sum(1 << x for x in S) for S in closed_subsets_oracle(G)}
        mine = set(lat.masks)
        rep.check("subgroups match the closed-subset oracle", oracle == mine,
                  {"missing": [hex(m) for m in sorted(oracle - mine)][:5],
                   "extra": [hex(m) for m in sorted(mine - oracle)][:5]})
    part = sorted(i for c in lat.conjugacy_classes for i in c)
    rep.check("conjugacy classes partition the lattice", part == list(range(len(lat))))
    normals = {lat.masks[i] for i in lat.normal_indices()}
    rep.check("normal lattice members are the normal subgroups", normals == set(G.normal_subgroups))
    bad = [i for i in range(len(lat)) if G.order % lat.orders[i]]
    rep.check("subgroup orders divide |G|", not bad, {"subgroups": bad})
    return rep


def _aggregate(theorem_id: str, context: dict, reports: Iterable[TheoremReport]) -> TheoremReport:
    """Fold many reports into one: a conclusion holds if it held everywhere."""
    out = TheoremReport(theorem_id, context=dict(context))
    seen: dict[str, list] = {}
    applicable = unmet = 0
    for r in reports:
        if not r.applicable:
            unmet += 1
            continue
        applicable += 1
        for c in r.conclusions:
            ok, fails = seen.setdefault(c.name, [True, []])
            if not c.ok:
                seen[c.name][0] = False
                if len(fails) < 3:
                    fails.append({"context": r.context, "witness": c.witness})
    for name, (ok, fails) in seen.items():
        out.check(name, ok, {"failures": fails} if fails else {})
    out.context.update({"instances": applicable, "not_applicable": unmet})
    return out


@dataclass
class _Env:
    entry: CorpusEntry
    group: Group
    lattice: SubgroupLattice
    sets: list[FittingSet]
    explicit: list[FittingSet]

    @property
    def all_sets(self) -> list[FittingSet]:
        seen = {F.members for F in self.sets}
        return self.sets + [F for F in self.explicit if F.members not in seen]

    @property
    def pis(self) -> list[PrimeSet]:
        return prime_subsets(self.group.order)


def _skipped(theorem_id: str, env: _Env, reason: str) -> dict:
    return {"theorem_id": theorem_id, "status": "skipped", "reason": reason,
            "context": {"group": env.group.name}}


def _suite_lattice(env: _Env) -> Iterator:
    yield _lattice_report(env.lattice)


def _suite_axioms(env: _Env) -> Iterator:
    lat = env.lattice
    for F in env.all_sets:
        rep = TheoremReport("fitting-axioms", context={"group": env.group.name, "set": F.provenance})
        v = verify_axioms(lat, F.members)
        rep.check("axioms hold", v.ok, {"axiom": v.reason, **v.witness})
        bad = []
        for C in catalog_classes(lat):
            P = product_with_class(F, C)
            w = verify_axioms(lat, P.members)
            if not w:
                bad.append({"class": C.key, "axiom": w.reason, **w.witness})
        rep.check("axioms hold for every F o C", not bad, {"failures": bad[:5]})
        yield rep


def _suite_lemma2(env: _Env) -> Iterator:
    for F in env.all_sets:
        yield st.lemma_2_1(F)
        yield lemma_2_2_suite(F)
        yield st.lemma_2_3(F)
        yield st.lemma_2_5(F)
        for pi in env.pis:
            yield st.lemma_2_4(F, pi)


def _suite_products(env: _Env) -> Iterator:
    if env.group.order > PRODUCTS_MAX_ORDER:
        yield _skipped("products", env, f"|G| > {PRODUCTS_MAX_ORDER}")
        return
    classes = catalog_classes(env.lattice)
    for F in env.sets:
        ctx = {"group": env.group.name, "set": F.provenance, "classes": len(classes)}
        yield _aggregate("prop-3-2", ctx, (st.prop_3_2(F, C) for C in classes))
        yield _aggregate("prop-3-3", ctx, (st.prop_3_3(F, M, H) for M in classes for H in classes))
        yield _aggregate("prop-3-4", ctx, (
            *(st.prop_3_4_sets(F, K, M) for K in env.sets for M in classes),
            *(st.prop_3_4_classes(F, M, H) for M in classes for H in classes),
        ))


def _suite_semilocal(env: _Env) -> Iterator:
    lat = env.lattice
    for pi in env.pis:
        yield st.example_4_1(lat, pi)
    for F in env.all_sets:
        for pi in env.pis:
            yield st.lemma_4_2(F, pi)
    for hf in generated_hfunctions(lat):
        yield st.lemma_4_3(hf)
        yield st.prop_4_8(hf)


def _suite_constraint(env: _Env) -> Iterator:
    lat = env.lattice
    yield st.corollary_4_6(lat)
    for pi in env.pis:
        yield st.corollary_4_5(lat, pi)
    for hf in generated_hfunctions(lat):
        if not hf.full:
            continue
        X0 = next(iter(hf.assignments.values()))
        for X in env.sets:
            if X <= X0:
                yield st.lemma_4_4(hf, X)


def _suite_theorem_a(env: _Env) -> Iterator:
    for F in env.all_sets:
        yield verify_theorem_a(F, 1)
        for case in (2, 3):
            for pi in env.pis:
                yield verify_theorem_a(F, case, pi)
    yield from _explicit(env, "theorem-a")


def _suite_theorem_b(env: _Env) -> Iterator:
    for hf in generated_hfunctions(env.lattice):
        yield verify_theorem_b(hf)
    yield from _explicit(env, "theorem-b")


def _suite_prop56(env: _Env) -> Iterator:
    for F in env.all_sets:
        for pi in env.pis:
            yield verify_prop_5_6(F, pi)


def _suite_corollaries(env: _Env) -> Iterator:
    lat = env.lattice
    for pi in env.pis:
        for C in catalog_classes(lat):
            yield st.corollary_5_1(lat, C, pi)
        yield st.corollary_5_2(lat, pi)
        yield st.corollary_5_3(lat, pi)
        yield st.corollary_6_1(lat, pi)
        for k in (0, 1, 2):
            yield st.corollary_6_2(lat, pi, k)
    for F in env.all_sets:
        yield st.corollary_5_4(F)


def _suite_degenerations(env: _Env) -> Iterator:
    lat = env.lattice
    for p in sorted(sigma_primes(env.group.order)):
        yield st.sylow_degeneration(lat, p)
    yield st.trace_all_degeneration(lat)
    yield st.disjoint_pi_degeneration(lat, [_extra_prime(env.group.order)])


def _suite_counterexamples(env: _Env) -> Iterator:
    for F in env.all_sets:
        found = counterexample_search(F)
        yield {"theorem_id": "counterexample-search", "status": "pass",
               "context": {"group": env.group.name, "set": F.provenance}, "findings": found}


def _explicit(env: _Env, suite: str) -> Iterator:
    """Parameterised runs listed in the corpus entry itself."""
    for item in env.entry.suites:
        if item["suite"] != suite:
            continue
        targets = [parse_fitting_set(env.lattice, item["set"])] if "set" in item else env.all_sets
        for F in targets:
            if suite == "theorem-a":
                yield verify_theorem_a(F, item.get("case", 1), item.get("pi"))
            elif suite == "theorem-b":
                yield verify_theorem_b(slr(item["pi"], F))


RUNNERS: dict[str, Callable[[_Env], Iterator]] = {
    "lattice-invariants": _suite_lattice,
    "fitting-axioms": _suite_axioms,
    "lemma-2": _suite_lemma2,
    "products": _suite_products,
    "semilocal": _suite_semilocal,
    "constraint": _suite_constraint,
    "theorem-a": _suite_theorem_a,
    "theorem-b": _suite_theorem_b,
    "prop-5-6": _suite_prop56,
    "corollaries": _suite_corollaries,
    "degenerations": _suite_degenerations,
    "counterexample-search": _suite_counterexamples,
}


def _as_entry(item, entry: CorpusEntry, suite: str) -> dict:
    doc = item.to_json() if isinstance(item, TheoremReport) else dict(item)
    return {"entry": entry.name, "group": entry.group_spec.get("name", "G"), "suite": suite, **doc}


def run_entry(entry: CorpusEntry, suites: list[str]) -> tuple[list[dict], float]:
    t0 = time.perf_counter()
    out: list[dict] = []
    try:
        G = parse_group(entry.group_spec)
        lat = all_subgroups(G)
        sets = generated_sets(lat)
        explicit = [parse_fitting_set(lat, s) for s in entry.fitting_specs]
    except FitsetError as exc:
        out.append({"entry": entry.name, "group": entry.group_spec.get("name", "G"),
                    "suite": "load", "theorem_id": "load", "status": "skipped",
                    "reason": f"{type(exc).__name__}: {exc}", "context": {}})
        return out, time.perf_counter() - t0
    env = _Env(entry, G, lat, sets, explicit)
    for suite in suites:
        try:
            for item in RUNNERS[suite](env):
                out.append(_as_entry(item, entry, suite))
        except Exception as exc:  # failures are data
            out.append({"entry": entry.name, "group": G.name, "suite": suite,
                        "theorem_id": suite, "status": "fail", "context": {},
                        "error": f"{type(exc).__name__}: {exc}"})
    return out, time.perf_counter() - t0


def _run_entry_star(args):
    return run_entry(*args)


@dataclass
class Report:
    entries: list[dict]
    corpus_digest: str
    suites: list[str]
    timing: dict
    tool_version: str = __version__

    @property
    def summary(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "hypotheses_unmet": 0, "skipped": 0}
        for e in self.entries:
            out[e["status"]] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.summary["fail"] == 0

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "corpus_digest": self.corpus_digest,
            "element_order": "bfs-lex",
            "suites": self.suites,
            "summary": self.summary,
            "entries": self.entries,
            "timing": self.timing,
        }


def run_suite(entries: list[CorpusEntry], suites: Iterable[str] | None = None,
              jobs: int = 1) -> Report:
    chosen = select_suites(suites)
    t0 = time.perf_counter()
    if not chosen:
        results = [([], 0.0) for _ in entries]
    elif jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_entry_star, [(e, chosen) for e in entries]))
    else:
        results = [run_entry(e, chosen) for e in entries]
    rows = [row for rows, _ in results for row in rows]
    timing = {
        "total_seconds": round(time.perf_counter() - t0, 3),
        "per_entry_seconds": {e.name: round(t, 3) for e, (_, t) in zip(entries, results)},
    }
    return Report(rows, corpus_digest(entries), chosen, timing)


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        doc = report.to_json()
        jsonschema.validate(doc, _schema("report.schema.json"))
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if fmt != "text":
        raise ArgumentError(f"unknown report format {fmt!r}")
    s = report.summary
    lines = [f"fitset {report.tool_version}  corpus {report.corpus_digest[:12]}",
             f"suites: {', '.join(report.suites) or '(none)'}",
             f"pass {s['pass']}  fail {s['fail']}  hypotheses_unmet {s['hypotheses_unmet']}"
             f"  skipped {s['skipped']}"]
    for e in report.entries:
        if e["status"] != "fail":
            continue
        lines.append(f"FAIL {e['entry']} {e['suite']} {e['theorem_id']}")
        if "error" in e:
            lines.append(f"  error: {e['error']}")
        for c in e.get("conclusions_checked", []):
            if not c["ok"]:
                lines.append(f"  {c['name']}: {json.dumps(c['witness'], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def strip_timing(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != "timing"}
