"""Hierarchical chart of accounts.

Account names are colon-separated paths ("assets:cash"). Declaring a
path materializes every missing ancestor as an implicit interior node.
Only leaves of the resulting tree are postable; interior nodes exist to
be aggregated over their subtrees.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DuplicateAccountError, UnknownAccountError

__all__ = ["AccountPath", "Chart"]

SEGMENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")


@dataclass(frozen=True, order=True, slots=True)
class AccountPath:
    """A non-empty sequence of identifier segments, rendered with ":".

    Comparison is case-sensitive and exact; ordering is lexicographic by
    segment, which keeps reports deterministic.
    """

    segments: tuple[str, ...]

    def __post_init__(self):
        if not self.segments:
            raise ValueError("account path needs at least one segment")
        for seg in self.segments:
            if not SEGMENT_RE.match(seg):
                raise ValueError(f"invalid account segment {seg!r}")

    @classmethod
    def parse(cls, text: str) -> AccountPath:
        return cls(tuple(text.split(":")))

    @property
    def parent(self) -> AccountPath | None:
        if len(self.segments) == 1:
            return None
        return AccountPath(self.segments[:-1])

    @property
    def leaf(self) -> str:
        return self.segments[-1]

    @property
    def depth(self) -> int:
        return len(self.segments)

    def child(self, segment: str) -> AccountPath:
        return AccountPath(self.segments + (segment,))

    def is_ancestor_of(self, other: AccountPath) -> bool:
        """Proper-prefix test: self is strictly above other."""
        return (
            len(self.segments) < len(other.segments)
            and other.segments[: len(self.segments)] == self.segments
        )

    def __str__(self) -> str:
        return ":".join(self.segments)


@dataclass(frozen=True)
class Chart:
    """An immutable rooted tree of account paths.

    Each present path is flagged declared (True) or implicit (False); an
    implicit node exists only because some declared descendant needs it.
    Operations return new charts, never mutate.
    """

    nodes: dict[AccountPath, bool] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> Chart:
        return cls({})

    def declare(self, path: AccountPath) -> Chart:
        """Add a declared path, materializing missing ancestors as implicit.

        Re-declaring an already declared path raises: it signals a
        journal authoring mistake.
        """
        if self.nodes.get(path):
            raise DuplicateAccountError(f"account {path} already declared")
        nodes = dict(self.nodes)
        ancestor = path.parent
        while ancestor is not None and ancestor not in nodes:
            nodes[ancestor] = False
            ancestor = ancestor.parent
        nodes[path] = True
        return Chart(nodes)

    def declare_all(self, paths: Iterable[AccountPath]) -> Chart:
        chart = self
        for path in paths:
            chart = chart.declare(path)
        return chart

    def __contains__(self, path: AccountPath) -> bool:
        return path in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def is_declared(self, path: AccountPath) -> bool:
        return bool(self.nodes.get(path))

    def children(self, path: AccountPath) -> tuple[AccountPath, ...]:
        return tuple(sorted(p for p in self.nodes if p.parent == path))

    def is_leaf(self, path: AccountPath) -> bool:
        """Postable test: present and without children."""
        if path not in self.nodes:
            return False
        return not any(p.parent == path for p in self.nodes)

    def roots(self) -> tuple[AccountPath, ...]:
        return tuple(sorted(p for p in self.nodes if p.depth == 1))

    def leaves(self) -> tuple[AccountPath, ...]:
        parents = {p.parent for p in self.nodes}
        return tuple(sorted(p for p in self.nodes if p not in parents))

    def leaves_under(self, path: AccountPath) -> tuple[AccountPath, ...]:
        """All postable leaves in the subtree rooted at path (inclusive)."""
        if path not in self.nodes:
            raise UnknownAccountError(f"unknown account {path}")
        parents = {p.parent for p in self.nodes}
        return tuple(
            sorted(
                p
                for p in self.nodes
                if p not in parents and (p == path or path.is_ancestor_of(p))
            )
        )

    def declared_paths(self) -> tuple[AccountPath, ...]:
        return tuple(sorted(p for p, declared in self.nodes.items() if declared))
