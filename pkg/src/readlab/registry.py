"""Canonical catalog of the 255 feature codes and the named feature sets.

The catalog lives in ``data/feature_manifest.csv`` (index, code, subgroup,
branch, kind) and is loaded once at import. Everything downstream -- column
ordering, set resolution, extraction dispatch -- keys off this table.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

BRANCHES = ("AdSem", "Disco", "Synta", "LxSem", "ShaTr")

SUBGROUPS = {
    "WoKF": "AdSem", "WBKF": "AdSem", "OSKF": "AdSem",
    "EnDF": "Disco", "EnGF": "Disco",
    "PhrF": "Synta", "TrSF": "Synta", "POSF": "Synta",
    "VarF": "LxSem", "TTRF": "LxSem", "PsyF": "LxSem", "WorF": "LxSem",
    "ShaF": "ShaTr", "TraF": "ShaTr",
}

_COUNT_CODE = re.compile(r"^(to|as|at|ra)_[A-Za-z0-9]{5}_C$")
_SCORE_CODE = re.compile(r"^[A-Za-z0-9]{7}_S$")

# Named feature sets: each entry is a list of branches/subgroups to include,
# or a (base set, ops) pair where ops are "+Subgroup"/"-Subgroup" edits.
SET_DEFINITIONS: dict[str, object] = {
    "T1": ["AdSem", "Disco", "Synta", "LxSem", "ShaTr"],
    "T2": ["Disco", "Synta", "LxSem", "ShaTr"],
    "T3": ["AdSem", "Synta", "LxSem", "ShaTr"],
    "H1": ["AdSem", "Disco"],
    "L1": ["Synta", "LxSem"],
    "L2": ("L1", ["-PhrF"]),
    "L3": ("L1", ["-VarF"]),
    "L4": ("L1", ["-POSF"]),
    "E1": ["AdSem", "PsyF", "WorF", "TraF"],
    "E2": ["AdSem", "PsyF", "WorF"],
    "E3": ["PsyF", "WorF"],
    "P1": ["EnDF", "ShaF", "TrSF", "POSF", "WorF", "PsyF", "TraF"],
    "P2": ("P1", ["+TraF"]),
    "P3": ("P2", ["+VarF"]),
}


class RegistryError(ValueError):
    """Unknown feature-set name or a malformed manifest."""


@dataclass(frozen=True)
class FeatureDescriptor:
    index: int
    code: str
    subgroup: str
    branch: str
    kind: str  # "C" count-based, "S" score-based

    def validate_code(self) -> bool:
        if self.kind == "C":
            return bool(_COUNT_CODE.match(self.code))
        return bool(_SCORE_CODE.match(self.code))


@lru_cache(maxsize=1)
def registry() -> tuple[FeatureDescriptor, ...]:
    """All 255 descriptors in index order."""
    path = resources.files("readlab.data").joinpath("feature_manifest.csv")
    with path.open("r", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        descriptors = tuple(
            FeatureDescriptor(
                index=int(row["index"]),
                code=row["code"],
                subgroup=row["subgroup"],
                branch=row["branch"],
                kind=row["kind"],
            )
            for row in reader
        )
    codes = {d.code for d in descriptors}
    if len(descriptors) != 255 or len(codes) != 255:
        raise RegistryError(f"manifest expected 255 unique codes, found {len(codes)}")
    if [d.index for d in descriptors] != list(range(1, 256)):
        raise RegistryError("manifest indices must be dense 1..255")
    return descriptors


@lru_cache(maxsize=1)
def _by_subgroup() -> dict[str, list[FeatureDescriptor]]:
    out: dict[str, list[FeatureDescriptor]] = {s: [] for s in SUBGROUPS}
    for d in registry():
        out[d.subgroup].append(d)
    return out


def subgroup_codes(subgroup: str) -> list[str]:
    if subgroup not in SUBGROUPS:
        raise RegistryError(f"unknown subgroup {subgroup!r}")
    return [d.code for d in _by_subgroup()[subgroup]]


def branch_codes(branch: str) -> list[str]:
    if branch not in BRANCHES:
        raise RegistryError(f"unknown branch {branch!r}")
    return [d.code for d in registry() if d.branch == branch]


def _member_subgroups(name: str) -> set[str]:
    definition = SET_DEFINITIONS[name]
    if isinstance(definition, tuple):
        base, ops = definition
        members = _member_subgroups(base)
        for op in ops:
            sub = op[1:]
            if sub not in SUBGROUPS:
                raise RegistryError(f"set {name!r} edits unknown subgroup {sub!r}")
            if op.startswith("+"):
                members.add(sub)
            else:
                members.discard(sub)
        return members
    members = set()
    for item in definition:
        if item in BRANCHES:
            members.update(s for s, b in SUBGROUPS.items() if b == item)
        elif item in SUBGROUPS:
            members.add(item)
        else:
            raise RegistryError(f"set {name!r} references unknown group {item!r}")
    return members


def resolve_set(name: str) -> list[str]:
    """Expand a named feature set to its codes, deduplicated, in registry order."""
    if name not in SET_DEFINITIONS:
        known = ", ".join(sorted(SET_DEFINITIONS))
        raise RegistryError(f"unknown feature set {name!r} (known: {known})")
    members = _member_subgroups(name)
    return [d.code for d in registry() if d.subgroup in members]


def set_subgroups(name: str) -> set[str]:
    """Subgroups a named set touches (used to skip extractors the set never needs)."""
    if name not in SET_DEFINITIONS:
        raise RegistryError(f"unknown feature set {name!r}")
    return _member_subgroups(name)


def all_codes() -> list[str]:
    return [d.code for d in registry()]
