"""Named matroids with their recipes, frameworks and validation hooks.

A catalog directory holds an ``index.json`` plus the graph and matroid files
it names. Entries under ``"optional"`` are only available when their data
files are present in the directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .biased import BiasedGraph, BraceletFunction, bracelet, cycle_matroid, frame_matroid, is_framework, quasigraphic_matroid
from .bicircular import bicircular_matroid
from .decide import verify_excluded_minor
from .errors import InvalidInput, NotFound, ParseError
from .formats import load_graph, load_matroid
from .matroid import CircuitMatroid, is_isomorphic

RECIPES = ("matroid", "cycle", "bicircular", "dual")


@dataclass
class Framework:
    source: str
    biased: BiasedGraph
    chi: BraceletFunction


@dataclass
class CatalogEntry:
    name: str
    matroid: CircuitMatroid
    recipe: str
    note: str = ""
    frameworks: list = field(default_factory=list)
    spec: dict = field(default_factory=dict)


@dataclass
class ValidationResult:
    name: str
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


def default_directory() -> Path:
    return Path(str(resources.files("bicircular") / "data"))


class Catalog:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_directory()
        index = self.directory / "index.json"
        try:
            data = json.loads(index.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise NotFound(f"no index.json in {self.directory}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, str(index)) from None
        self._entries = {e["name"]: e for e in data.get("entries", [])}
        self._optional = dict(data.get("optional", {}))
        self._cache = {}

    def names(self, include_missing: bool = False) -> list[str]:
        out = list(self._entries)
        out += [n for n in self._optional if include_missing or self._available(self._optional[n])]
        return out

    def _available(self, spec: dict) -> bool:
        files = [spec["file"], *spec.get("frameworks", [])]
        return all((self.directory / f).exists() for f in files)

    def spec(self, name: str) -> dict:
        if name in self._entries:
            return self._entries[name]
        if name in self._optional:
            return self._optional[name]
        raise NotFound(f"unknown catalog entry {name!r}")

    def get(self, name: str) -> CatalogEntry:
        if name in self._cache:
            return self._cache[name]
        spec = self.spec(name)
        if name in self._optional and not self._available(spec):
            raise NotFound(f"catalog entry {name!r} needs data files that are not present in {self.directory}")
        entry = self._build(name, spec)
        self._cache[name] = entry
        return entry

    def _build(self, name: str, spec: dict) -> CatalogEntry:
        recipe = spec.get("recipe")
        if recipe not in RECIPES:
            raise ParseError(f"entry {name!r}: unknown recipe {recipe!r}", None, str(self.directory / "index.json"))
        path = self.directory / spec["file"]
        if recipe == "matroid":
            M = load_matroid(path)
        elif recipe == "dual":
            M = load_matroid(path).dual()
        else:
            doc = load_graph(path)
            if recipe == "cycle":
                M = cycle_matroid(doc.graph)
            else:
                M = bicircular_matroid(doc.loop_biased())
        # every catalog matroid must pass the circuit axioms
        bad = M.axiom_violation(cap=M.size)
        if bad is not None:
            raise InvalidInput(f"entry {name!r} is not a matroid: {bad}")
        frameworks = []
        for f in spec.get("frameworks", []):
            doc = load_graph(self.directory / f)
            BG = doc.biased()
            frameworks.append(Framework(f, BG, doc.bracelet_function(BG)))
        return CatalogEntry(name, M, recipe, spec.get("note", ""), frameworks, spec)

    def validate(self, name: str, check_excluded_minor: bool = True) -> ValidationResult:
        problems = []
        try:
            entry = self.get(name)
        except (ParseError, InvalidInput) as exc:
            return ValidationResult(name, [str(exc)])
        M, spec = entry.matroid, entry.spec
        if "expect_uniform" in spec:
            r, n = spec["expect_uniform"]
            if not is_isomorphic(M, CircuitMatroid.uniform(r, range(n))):
                problems.append(f"not isomorphic to U{r},{n}")
        for fw in entry.frameworks:
            report = is_framework(M, fw.biased.graph)
            if not report.passed:
                problems.append(f"{fw.source}: not a framework for the matroid")
            built = quasigraphic_matroid(fw.biased, fw.chi)
            if not built.accepted:
                problems.append(f"{fw.source}: bracelet function rejected ({built.rejection})")
            elif built.matroid != M:
                problems.append(f"{fw.source}: represents a different matroid")
            if not fw.chi.dependant() and frame_matroid(fw.biased) != M:
                problems.append(f"{fw.source}: frame matroid differs")
        for C in spec.get("quoted_balanced", []):
            hits = [fw for fw in entry.frameworks if fw.biased.is_balanced(C)]
            if not hits:
                problems.append(f"quoted cycle {C} is balanced in no stored framework")
        for a, b in spec.get("quoted_dependant", []):
            key = bracelet(a, b)
            if not any(key in fw.chi.dependant() for fw in entry.frameworks):
                problems.append(f"quoted bracelet {a} | {b} is dependant in no stored framework")
        if spec.get("quoted_primal_circuits"):
            primal = M.dual()
            for C in spec["quoted_primal_circuits"]:
                if not primal.is_circuit(C):
                    problems.append(f"quoted circuit {C} missing from the primal matroid")
        if check_excluded_minor and "expect_excluded_minor" in spec:
            report = verify_excluded_minor(M)
            if report.is_excluded_minor != spec["expect_excluded_minor"]:
                problems.append(f"excluded-minor verdict is {report.verdict}")
            elif report.is_excluded_minor and not report.exhaustive:
                problems.append("excluded-minor verdict is not exhaustive")
        return ValidationResult(name, problems)


_DEFAULT = None


def default_catalog() -> Catalog:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Catalog()
    return _DEFAULT


def get(name: str, directory=None) -> CatalogEntry:
    return (default_catalog() if directory is None else Catalog(directory)).get(name)


def names(directory=None) -> list[str]:
    return (default_catalog() if directory is None else Catalog(directory)).names()


__all__ = ["Catalog", "CatalogEntry", "Framework", "ValidationResult", "default_catalog", "get", "names"]
