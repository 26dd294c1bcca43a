"""Bracketed constituency trees: parsing, serialization, and shape measures.

Grammar is the usual Penn-style bracketing ``(LABEL child ...)`` with leaves
as bare tokens. Literal parentheses inside tokens are escaped as -LRB-/-RRB-.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class TreeParseError(ValueError):
    pass


_ESCAPES = {"(": "-LRB-", ")": "-RRB-"}
_UNESCAPES = {"-LRB-": "(", "-RRB-": ")"}


@dataclass
class ConstituencyTree:
    """A node is either a leaf (token text, no children) or an inner node."""

    label: str
    children: list["ConstituencyTree"] = field(default_factory=list)
    leaf: str | None = None

    @property
    def is_leaf(self) -> bool:
        return self.leaf is not None

    def leaves(self) -> list[str]:
        if self.is_leaf:
            return [self.leaf]
        out: list[str] = []
        for child in self.children:
            out.extend(child.leaves())
        return out

    def height(self) -> int:
        """Levels from this node to the deepest leaf, inclusive of both."""
        if self.is_leaf:
            return 1
        return 1 + max(c.height() for c in self.children)

    def node_count(self) -> int:
        """All nodes: interior labels plus leaf tokens."""
        if self.is_leaf:
            return 1
        return 1 + sum(c.node_count() for c in self.children)

    def count_labels(self, normalize=True) -> dict[str, int]:
        """Occurrences of each interior label; nested nodes all count.

        With ``normalize`` the label is truncated at the first '-' or '=' so
        function-tagged labels like NP-SBJ fold into NP.
        """
        counts: dict[str, int] = {}
        stack = [self]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            label = _normalize_label(node.label) if normalize else node.label
            counts[label] = counts.get(label, 0) + 1
            stack.extend(node.children)
        return counts

    def to_bracketed(self) -> str:
        if self.is_leaf:
            return _escape(self.leaf)
        inner = " ".join(c.to_bracketed() for c in self.children)
        return f"({self.label} {inner})"


def _normalize_label(label: str) -> str:
    for sep in ("-", "="):
        if sep in label:
            label = label.split(sep, 1)[0]
    return label or label


def _escape(token: str) -> str:
    return token.replace("(", "-LRB-").replace(")", "-RRB-")


def _unescape(token: str) -> str:
    for esc, raw in _UNESCAPES.items():
        token = token.replace(esc, raw)
    return token


def _tokenize(text: str):
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in "()":
            yield ch
            i += 1
        elif ch.isspace():
            i += 1
        else:
            j = i
            while j < n and text[j] not in "() \t\r\n":
                j += 1
            yield text[i:j]
            i = j


def parse_bracketed(text: str) -> ConstituencyTree:
    """Parse one bracketed tree; raises TreeParseError on malformed input."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise TreeParseError("empty tree string")
    pos = 0

    def parse_node() -> ConstituencyTree:
        nonlocal pos
        if tokens[pos] != "(":
            raise TreeParseError(f"expected '(' at token {pos}: {tokens[pos]!r}")
        pos += 1
        if pos >= len(tokens) or tokens[pos] in "()":
            raise TreeParseError("node missing label")
        label = tokens[pos]
        pos += 1
        children: list[ConstituencyTree] = []
        while pos < len(tokens) and tokens[pos] != ")":
            if tokens[pos] == "(":
                children.append(parse_node())
            else:
                children.append(ConstituencyTree(label="", leaf=_unescape(tokens[pos])))
                pos += 1
        if pos >= len(tokens):
            raise TreeParseError("unbalanced parentheses: missing ')'")
        pos += 1  # consume ')'
        if not children:
            raise TreeParseError(f"node {label!r} has neither children nor a leaf")
        return ConstituencyTree(label=label, children=children)

    root = parse_node()
    if pos != len(tokens):
        raise TreeParseError("trailing content after tree")
    return root
