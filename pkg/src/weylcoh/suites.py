"""Kernel-verification suites stored as TOML manifests.

Manifest grammar::

    version = 1
    name = "..."
    [[entry]]
    diagram = "A2+A2"                  # diagram spec
    action = ["(1 2)", "(1 3)(2 4)"]   # generators, disjoint cycles
    expect_weyl_order = 36             # optional
    expect_cocycle_count = 60          # optional
    expect_class_count = 4             # optional
    reference_cocycle = [[...], ...]   # optional, single-generator actions

The ``default`` and ``appendix-a`` suites ship with the package.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .cohomology import (
    Cocycle,
    GroupAction,
    KernelReport,
    _extend_hom,
    _from_hom,
    build_action,
    h1_kernel,
    is_cocycle,
    is_cohomologous,
)
from .linalg import IntMatrix
from .weyl import _mul

EMBEDDED = ("default", "appendix-a")
MANIFEST_VERSION = 1


class SuiteError(ValueError):
    """Malformed suite manifest."""


@dataclass(frozen=True)
class SuiteEntry:
    diagram: str
    action: tuple[str, ...]
    expect_weyl_order: int | None = None
    expect_cocycle_count: int | None = None
    expect_class_count: int | None = None
    reference_cocycle: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class Suite:
    name: str
    version: int
    entries: tuple[SuiteEntry, ...]


_INT_KEYS = ("expect_weyl_order", "expect_cocycle_count", "expect_class_count")


def _parse_entry(raw: dict, k: int) -> SuiteEntry:
    unknown = set(raw) - {"diagram", "action", "reference_cocycle", *_INT_KEYS}
    if unknown:
        raise SuiteError(f"entry {k}: unknown keys {sorted(unknown)}")
    diagram = raw.get("diagram")
    if not isinstance(diagram, str):
        raise SuiteError(f"entry {k}: 'diagram' must be a string")
    action = raw.get("action", [])
    if not isinstance(action, list) or not all(isinstance(x, str) for x in action):
        raise SuiteError(f"entry {k}: 'action' must be a list of strings")
    kwargs: dict[str, Any] = {}
    for key in _INT_KEYS:
        if key in raw:
            if not isinstance(raw[key], int):
                raise SuiteError(f"entry {k}: {key!r} must be an integer")
            kwargs[key] = raw[key]
    if "reference_cocycle" in raw:
        m = raw["reference_cocycle"]
        if not (isinstance(m, list) and all(isinstance(r, list) and all(isinstance(x, int) for x in r) for r in m)):
            raise SuiteError(f"entry {k}: 'reference_cocycle' must be a matrix of integers")
        kwargs["reference_cocycle"] = tuple(tuple(r) for r in m)
    return SuiteEntry(diagram, tuple(action), **kwargs)


def parse_suite(text: str, default_name: str = "suite") -> Suite:
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SuiteError(f"invalid manifest: {exc}") from None
    version = data.get("version", MANIFEST_VERSION)
    if version != MANIFEST_VERSION:
        raise SuiteError(f"unsupported manifest version {version}")
    entries = data.get("entry", [])
    if not isinstance(entries, list):
        raise SuiteError("'entry' must be an array of tables")
    return Suite(
        name=str(data.get("name", default_name)),
        version=version,
        entries=tuple(_parse_entry(e, k) for k, e in enumerate(entries, 1)),
    )


def load_suite(name_or_path: str | Path) -> Suite:
    """Load an embedded suite by name, or a manifest file by path."""
    if str(name_or_path) in EMBEDDED:
        text = resources.files("weylcoh").joinpath(f"suites/{name_or_path}.toml").read_text()
        return parse_suite(text, str(name_or_path))
    path = Path(name_or_path)
    if not path.is_file():
        raise FileNotFoundError(f"suite manifest not found: {path}")
    return parse_suite(path.read_text(), path.stem)


# -- running ------------------------------------------------------------------

@dataclass
class EntryResult:
    entry: SuiteEntry
    report: KernelReport | None = None
    error: str | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    reference_match: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(self.checks.values())


@dataclass
class SuiteReport:
    name: str
    results: list[EntryResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def cocycle_from_generator_value(a: GroupAction, value: IntMatrix) -> Cocycle | None:
    """Cocycle of a cyclic action with the given value at its generator, if one exists."""
    if len(a.generators) != 1 or value.shape != (a.dim, a.dim) or value not in a.weyl:
        return None
    gi = a.generator_indices[0]
    phi = _extend_hom(a, {gi: _mul(value.entries, a.matrix_keys[gi], a.dim)})
    if phi is None or len(phi) != a.order:
        return None
    c = _from_hom(a, phi)
    return c if is_cocycle(a, c.values) else None


def match_reference(a: GroupAction, report: KernelReport,
                    rows: Sequence[Sequence[int]]) -> tuple[str | None, int | None]:
    """Find the class of a given cocycle value, trying it as given and transposed."""
    m = IntMatrix.from_rows(rows)
    for label, cand in (("as-given", m), ("transpose", m.T)):
        c = cocycle_from_generator_value(a, cand)
        if c is None:
            continue
        for i, rep in enumerate(report.classes.representatives):
            if is_cohomologous(a, rep, c):
                return label, i
    return None, None


def run_entry(entry: SuiteEntry, max_order: int | None = None,
              max_group: int | None = None) -> EntryResult:
    result = EntryResult(entry)
    try:
        a = build_action(entry.diagram, gens=entry.action, max_order=max_order, max_group=max_group)
        rep = h1_kernel(a)
    except Exception as exc:  # recorded per entry; the suite keeps going
        result.error = f"{type(exc).__name__}: {exc}"
        return result
    result.report = rep
    result.checks["trivial_kernel"] = rep.trivial_kernel
    if entry.expect_weyl_order is not None:
        result.checks["weyl_order"] = rep.weyl_order == entry.expect_weyl_order
    if entry.expect_cocycle_count is not None:
        result.checks["cocycle_count"] = rep.cocycle_count == entry.expect_cocycle_count
    if entry.expect_class_count is not None:
        result.checks["class_count"] = rep.class_count == entry.expect_class_count
    if entry.reference_cocycle is not None:
        label, idx = match_reference(a, rep, entry.reference_cocycle)
        result.reference_match = label
        result.checks["reference_cocycle"] = idx is not None and idx != rep.classes.trivial_index
    return result


def verify_kernel_suite(suite: Suite | Sequence[SuiteEntry], max_order: int | None = None,
                        max_group: int | None = None) -> SuiteReport:
    if isinstance(suite, Suite):
        name, entries = suite.name, suite.entries
    else:
        name, entries = "adhoc", tuple(suite)
    return SuiteReport(name, [run_entry(e, max_order, max_group) for e in entries])
