"""Probabilistic context-free grammars: induction from bracketed treebanks
and top-down sentence sampling."""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from ..corpus import WORD, TokenSequence
from ..errors import EmptyTreebank, InvalidParam, ParseError, UnproductiveGrammar
from .rng import SeededRng

FORMAT_NAME = "scalecheck-pcfg"
FORMAT_VERSION = 1

Tree = tuple  # (label, children); children are Trees or terminal strings


@dataclass(frozen=True)
class Pcfg:
    """Productions with per-left-hand-side probability distributions.

    A right-hand-side symbol is a nonterminal iff it has productions of its
    own; anything else is emitted as a terminal.
    """

    start: str
    productions: dict[str, tuple[tuple[tuple[str, ...], float], ...]]

    def __post_init__(self):
        if self.start not in self.productions:
            raise InvalidParam(f"start symbol {self.start!r} has no productions")
        for lhs, rules in self.productions.items():
            if not rules:
                raise InvalidParam(f"nonterminal {lhs!r} has an empty rule list")
            total = sum(p for _, p in rules)
            if abs(total - 1.0) > 1e-9:
                raise InvalidParam(f"probabilities for {lhs!r} sum to {total}")
            if any(p < 0 for _, p in rules):
                raise InvalidParam(f"negative probability under {lhs!r}")

    def save(self, path: str):
        symbols = {self.start}
        for lhs, rules in self.productions.items():
            symbols.add(lhs)
            for rhs, _ in rules:
                symbols.update(rhs)
        for s in symbols:
            if not s or any(ch.isspace() for ch in s):
                raise ValueError(f"symbol {s!r} cannot be serialized to the text format")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{FORMAT_NAME}\t{FORMAT_VERSION}\n")
            fh.write(f"start\t{self.start}\n")
            for lhs, rules in self.productions.items():
                for rhs, p in rules:
                    fh.write(f"{lhs}\t{' '.join(rhs)}\t{p!r}\n")

    @classmethod
    def load(cls, path: str) -> "Pcfg":
        with open(path, encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if header[0] != FORMAT_NAME:
                raise ValueError(f"not a {FORMAT_NAME} file: {path}")
            if int(header[1]) != FORMAT_VERSION:
                raise ValueError(f"unsupported format version {header[1]}")
            start_line = fh.readline().rstrip("\n").split("\t")
            if len(start_line) != 2 or start_line[0] != "start":
                raise ValueError("expected 'start' header line")
            start = start_line[1]
            prods: dict[str, list[tuple[tuple[str, ...], float]]] = defaultdict(list)
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                lhs, rhs, p = line.split("\t")
                prods[lhs].append((tuple(rhs.split()), float(p)))
        return cls(start, {k: tuple(v) for k, v in prods.items()})


def parse_trees(text: str) -> list[Tree]:
    """Read a sequence of label-first bracketed trees.

    Unlabeled single-child wrappers like "( (S ...) )" are unwrapped; any
    other structural defect raises ParseError with the character offset.
    """
    trees: list[Tree] = []
    stack: list[tuple[str, list, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "(":
            j = i + 1
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            stack.append((text[i + 1 : j], [], i))
            i = j
        elif ch == ")":
            if not stack:
                raise ParseError("unmatched ')'", i)
            label, children, opened = stack.pop()
            if not children:
                raise ParseError(f"node {label or '()'!r} has no children", opened)
            if label:
                node: Tree = (label, tuple(children))
            elif len(children) == 1 and isinstance(children[0], tuple):
                node = children[0]
            else:
                raise ParseError("unlabeled node with multiple children", opened)
            if stack:
                stack[-1][1].append(node)
            else:
                trees.append(node)
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            if not stack:
                raise ParseError(f"token {text[i:j]!r} outside any tree", i)
            stack[-1][1].append(text[i:j])
            i = j
    if stack:
        raise ParseError("unmatched '('", stack[-1][2])
    return trees


def strip_function_tags(label: str) -> str:
    """Drop -/= suffixes from a nonterminal label; labels like -NONE- survive."""
    cut = len(label)
    for sep in "-=":
        k = label.find(sep)
        if k > 0:
            cut = min(cut, k)
    return label[:cut]


def pcfg_induce(treebank_text: str, strip_tags: bool = True) -> Pcfg:
    """Relative-frequency grammar over the productions of every internal node."""
    trees = parse_trees(treebank_text)
    if not trees:
        raise EmptyTreebank("no trees found in treebank input")
    norm = strip_function_tags if strip_tags else (lambda s: s)

    counts: Counter[tuple[str, tuple[str, ...]]] = Counter()
    roots: list[str] = []
    for tree in trees:
        roots.append(norm(tree[0]))
        todo = [tree]
        while todo:
            label, children = todo.pop()
            rhs = []
            for c in children:
                if isinstance(c, tuple):
                    rhs.append(norm(c[0]))
                    todo.append(c)
                else:
                    rhs.append(c)
            counts[(norm(label), tuple(rhs))] += 1

    by_lhs: dict[str, list[tuple[tuple[str, ...], float]]] = defaultdict(list)
    totals: Counter[str] = Counter()
    for (lhs, _), c in counts.items():
        totals[lhs] += c
    for (lhs, rhs), c in counts.items():
        by_lhs[lhs].append((rhs, c / totals[lhs]))

    if len(set(roots)) == 1:
        start = roots[0]
    else:
        start = "TOP" if "TOP" not in by_lhs else "_TOP_"
        root_counts = Counter(roots)
        total = sum(root_counts.values())
        by_lhs[start] = [
            ((r,), c / total) for r, c in sorted(root_counts.items(), key=lambda kv: kv[0])
        ]
    return Pcfg(start, {k: tuple(v) for k, v in by_lhs.items()})


@dataclass(frozen=True)
class PcfgGeneration:
    """A sampled token stream plus how many derivations hit the depth guard."""

    sequence: TokenSequence
    abandoned: int


def pcfg_generate(
    g: Pcfg,
    target_length: int,
    rng: SeededRng,
    max_depth: int = 200,
    max_consecutive_failures: int = 1000,
) -> PcfgGeneration:
    """Sample whole sentences top-down until at least target_length tokens.

    Terminals are concatenated with no boundary markers. A derivation whose
    depth exceeds max_depth is abandoned and resampled; sentences yielding no
    tokens count as failures too, so degenerate grammars terminate.
    """
    if target_length < 1:
        raise InvalidParam("target_length must be >= 1")
    cums = {
        lhs: (np.cumsum([p for _, p in rules]), [r for r, _ in rules])
        for lhs, rules in g.productions.items()
    }
    nonterminals = set(g.productions)
    tokens: list[str] = []
    abandoned = 0
    consecutive = 0
    while len(tokens) < target_length:
        sentence = _sample_sentence(g.start, cums, nonterminals, rng, max_depth)
        if sentence:
            tokens.extend(sentence)
            consecutive = 0
        else:
            abandoned += 1
            consecutive += 1
            if consecutive >= max_consecutive_failures:
                raise UnproductiveGrammar(
                    f"{consecutive} consecutive derivations exceeded depth {max_depth}"
                )
    return PcfgGeneration(TokenSequence(tokens, WORD), abandoned)


def _sample_sentence(start, cums, nonterminals, rng: SeededRng, max_depth: int):
    out: list[str] = []
    stack: list[tuple[str, int]] = [(start, 0)]
    while stack:
        sym, depth = stack.pop()
        if sym in nonterminals:
            if depth >= max_depth:
                return None
            cum, rhss = cums[sym]
            rhs = rhss[rng.choice_index(cum)]
            stack.extend((s, depth + 1) for s in reversed(rhs))
        else:
            out.append(sym)
    return out
