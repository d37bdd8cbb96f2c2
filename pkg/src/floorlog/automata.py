"""Finite automata over digit alphabets.

Deterministic machines are immutable tables: state q reading digit d moves
to ``transitions[q][d]``, with every row total (a rejecting sink makes up
the difference when a language is finite).  Construction from word
patterns goes through a small epsilon-NFA and the subset construction,
followed by partition-refinement minimization and a breadth-first
renumbering so equal languages produce identical tables.

The kernel explorer walks arithmetic subsequences n -> s(base^i * n + j),
identifying two of them when their first ``prefix_len`` terms agree.
That fingerprinting can only merge too much, never too little, so a
"closed" answer is corroborating evidence while a growth curve is an
honest refusal to stabilize.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .numeration import to_word, word_str
from .sequences import ConsistencyError

Word = tuple[int, ...]


def _as_word(w) -> Word:
    if isinstance(w, str):
        return tuple(int(ch) for ch in w)
    return tuple(int(d) for d in w)


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton on the digit alphabet 0..base-1."""

    base: int
    transitions: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a machine needs at least one state")
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} out of range")
        for q, row in enumerate(self.transitions):
            if len(row) != self.base:
                raise ValueError(f"state {q} has {len(row)} edges, need {self.base}")
            for d, t in enumerate(row):
                if not 0 <= t < n:
                    raise ValueError(f"edge {q} --{d}--> {t} leaves the state set")
        for q in self.accepting:
            if not 0 <= q < n:
                raise ValueError(f"accepting state {q} out of range")

    @property
    def num_states(self) -> int:
        return len(self.transitions)

    def walk(self, word, start: int | None = None) -> int:
        q = self.start if start is None else start
        for d in _as_word(word):
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} outside alphabet of base {self.base}")
            q = self.transitions[q][d]
        return q

    def accepts(self, word) -> bool:
        return self.walk(word) in self.accepting

    def canonical(self) -> "Dfa":
        """Reachable part only, states renumbered in BFS discovery order."""
        order = {self.start: 0}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for d in range(self.base):
                t = self.transitions[q][d]
                if t not in order:
                    order[t] = len(order)
                    queue.append(t)
        rows = [[0] * self.base for _ in order]
        for q, idx in order.items():
            for d in range(self.base):
                rows[idx][d] = order[self.transitions[q][d]]
        acc = frozenset(order[q] for q in self.accepting if q in order)
        return Dfa(self.base, tuple(tuple(r) for r in rows), 0, acc)

    def minimize(self) -> "Dfa":
        m = self.canonical()
        n = m.num_states
        cls = [1 if q in m.accepting else 0 for q in range(n)]
        while True:
            labels: dict[tuple, int] = {}
            nxt = [0] * n
            for q in range(n):
                key = (cls[q],) + tuple(cls[m.transitions[q][d]] for d in range(m.base))
                nxt[q] = labels.setdefault(key, len(labels))
            if nxt == cls:
                break
            cls = nxt
        count = max(cls) + 1
        rows = [[0] * m.base for _ in range(count)]
        acc = set()
        for q in range(n):
            c = cls[q]
            for d in range(m.base):
                rows[c][d] = cls[m.transitions[q][d]]
            if q in m.accepting:
                acc.add(c)
        out = Dfa(m.base, tuple(tuple(r) for r in rows), cls[m.start], frozenset(acc))
        return out.canonical()

    def complement(self) -> "Dfa":
        everything = frozenset(range(self.num_states))
        return Dfa(self.base, self.transitions, self.start, everything - self.accepting)

    def accepted_words(self, max_len: int) -> Iterable[Word]:
        """All accepted words of length <= max_len, shortest first.

        Runs in time proportional to the answer: branches that cannot
        reach an accepting state within the remaining budget are pruned
        via a reverse-BFS distance table.
        """
        n = self.num_states
        dist = [None] * n
        frontier = [q for q in range(n) if q in self.accepting]
        for q in frontier:
            dist[q] = 0
        back: list[list[int]] = [[] for _ in range(n)]
        for q in range(n):
            for d in range(self.base):
                back[self.transitions[q][d]].append(q)
        step = 0
        while frontier:
            step += 1
            nxt = []
            for t in frontier:
                for q in back[t]:
                    if dist[q] is None:
                        dist[q] = step
                        nxt.append(q)
            frontier = nxt
        for length in range(max_len + 1):
            yield from self._words_of_length(self.start, length, dist)

    def _words_of_length(self, q: int, budget: int, dist) -> Iterable[Word]:
        if budget == 0:
            if q in self.accepting:
                yield ()
            return
        for d in range(self.base):
            t = self.transitions[q][d]
            if dist[t] is not None and dist[t] <= budget - 1:
                for rest in self._words_of_length(t, budget - 1, dist):
                    yield (d,) + rest

    def to_dot(self, name: str = "dfa") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  hidden [shape=point, style=invis];']
        for q in range(self.num_states):
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f"  q{q} [shape={shape}, label=\"{q}\"];")
        lines.append(f"  hidden -> q{self.start};")
        grouped: dict[tuple[int, int], list[int]] = {}
        for q in range(self.num_states):
            for d in range(self.base):
                grouped.setdefault((q, self.transitions[q][d]), []).append(d)
        for (q, t), digits in sorted(grouped.items()):
            label = ",".join(str(d) for d in digits)
            lines.append(f"  q{q} -> q{t} [label=\"{label}\"];")
        lines.append("}")
        return "\n".join(lines)

    def to_table(self) -> dict:
        return {
            "base": self.base,
            "start": self.start,
            "accepting": sorted(self.accepting),
            "transitions": [list(row) for row in self.transitions],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_table(), sort_keys=True, **kwargs)

    @classmethod
    def from_table(cls, table: dict) -> "Dfa":
        return cls(
            table["base"],
            tuple(tuple(row) for row in table["transitions"]),
            table["start"],
            frozenset(table["accepting"]),
        )


def trie_dfa(words: Iterable, base: int) -> Dfa:
    """Exact-finite-language machine: one trie node per proper prefix.

    Deliberately naive so it can serve as an independent oracle against
    the pattern-built machines.
    """
    toc: dict[Word, int] = {(): 0}
    accepted: set[int] = set()
    for raw in words:
        w = _as_word(raw)
        for d in w:
            if not 0 <= d < base:
                raise ValueError(f"digit {d} outside alphabet of base {base}")
        for i in range(1, len(w) + 1):
            toc.setdefault(w[:i], len(toc))
        accepted.add(toc[w])
    sink = len(toc)
    rows = [[sink] * base for _ in range(sink + 1)]
    for prefix, q in toc.items():
        for d in range(base):
            child = prefix + (d,)
            if child in toc:
                rows[q][d] = toc[child]
    return Dfa(base, tuple(tuple(r) for r in rows), 0, frozenset(accepted)).canonical()


class _Nfa:
    """Throwaway epsilon-NFA used only as scaffolding for from_patterns."""

    def __init__(self, base: int):
        self.base = base
        self.eps: list[set[int]] = []
        self.delta: list[dict[int, set[int]]] = []

    def fresh(self) -> int:
        self.eps.append(set())
        self.delta.append({})
        return len(self.eps) - 1

    def edge(self, q: int, d: int, t: int):
        if not 0 <= d < self.base:
            raise ValueError(f"digit {d} outside alphabet of base {self.base}")
        self.delta[q].setdefault(d, set()).add(t)

    def word_path(self, q: int, word: Word) -> int:
        for d in word:
            t = self.fresh()
            self.edge(q, d, t)
            q = t
        return q

    def closure(self, states: frozenset[int]) -> frozenset[int]:
        seen = set(states)
        stack = list(states)
        while stack:
            q = stack.pop()
            for t in self.eps[q]:
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def determinize(self, start: int, final: int) -> Dfa:
        start_set = self.closure(frozenset([start]))
        index = {start_set: 0}
        rows: list[list[int]] = []
        queue = deque([start_set])
        order = [start_set]
        while queue:
            cur = queue.popleft()
            row = []
            for d in range(self.base):
                moved = set()
                for q in cur:
                    moved.update(self.delta[q].get(d, ()))
                nxt = self.closure(frozenset(moved))
                if nxt not in index:
                    index[nxt] = len(index)
                    queue.append(nxt)
                    order.append(nxt)
                row.append(index[nxt])
            rows.append(row)
        acc = frozenset(i for i, s in enumerate(order) if final in s)
        return Dfa(self.base, tuple(tuple(r) for r in rows), 0, acc)


def from_patterns(patterns: Iterable, exceptions: Iterable = (), base: int = 2) -> Dfa:
    """Minimal DFA for (union of V0 V1* V2 over the patterns) + exceptions.

    Each pattern is a triple of digit words; strings like "01" are read
    digit by digit.  The result is checked against the raw subset-built
    machine before being returned.
    """
    nfa = _Nfa(base)
    start = nfa.fresh()
    final = nfa.fresh()
    for raw in exceptions:
        end = nfa.word_path(start, _as_word(raw))
        nfa.eps[end].add(final)
    for pat in patterns:
        v0, v1, v2 = (_as_word(part) for part in _unpack_pattern(pat))
        hub = nfa.word_path(start, v0)
        if v1:
            loop_end = nfa.word_path(hub, v1)
            nfa.eps[loop_end].add(hub)
        tail = nfa.word_path(hub, v2)
        nfa.eps[tail].add(final)
    raw_dfa = nfa.determinize(start, final)
    out = raw_dfa.minimize()
    ok, witness = equivalent(out, raw_dfa)
    if not ok:
        raise ConsistencyError(
            f"minimization changed the language, witness {word_str(witness)!r}"
        )
    return out


def _unpack_pattern(pat):
    if hasattr(pat, "v0"):
        return pat.v0, pat.v1, pat.v2
    v0, v1, v2 = pat
    return v0, v1, v2


def equivalent(a: Dfa, b: Dfa) -> tuple[bool, Word | None]:
    """Language equality, with a shortest distinguishing word on failure."""
    return _product_search(a, b, None)


def equivalent_to_length(a: Dfa, b: Dfa, max_len: int) -> tuple[bool, Word | None]:
    """Agreement on every word of length <= max_len only."""
    return _product_search(a, b, max_len)


def _product_search(a: Dfa, b: Dfa, max_len: int | None) -> tuple[bool, Word | None]:
    if a.base != b.base:
        raise ValueError(f"alphabet mismatch: base {a.base} vs {b.base}")
    seen = {(a.start, b.start)}
    queue: deque[tuple[int, int, Word]] = deque([(a.start, b.start, ())])
    while queue:
        qa, qb, word = queue.popleft()
        if (qa in a.accepting) != (qb in b.accepting):
            return False, word
        if max_len is not None and len(word) >= max_len:
            continue
        for d in range(a.base):
            ta, tb = a.transitions[qa][d], b.transitions[qb][d]
            if (ta, tb) not in seen:
                seen.add((ta, tb))
                queue.append((ta, tb, word + (d,)))
    return True, None


@dataclass(frozen=True)
class Dfao:
    """Automaton with per-state output; value(n) reads (n)_base MSD first.

    Leading zeros are harmless by construction: the start state is
    entered only at the beginning and its 0-edge loops.
    """

    base: int
    transitions: tuple[tuple[int, ...], ...]
    start: int
    output: tuple[int, ...]

    def __post_init__(self):
        if len(self.output) != len(self.transitions):
            raise ValueError("one output per state, no more, no less")

    def value(self, n: int) -> int:
        if n < 0:
            raise ValueError("inputs are natural numbers")
        q = self.start
        for d in to_word(n, self.base):
            q = self.transitions[q][d]
        return self.output[q]

    def value_of_word(self, word) -> int:
        q = self.start
        for d in _as_word(word):
            q = self.transitions[q][d]
        return self.output[q]

    def to_dot(self, name: str = "dfao") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", '  hidden [shape=point, style=invis];']
        for q in range(len(self.transitions)):
            lines.append(f"  q{q} [shape=circle, label=\"{q}/{self.output[q]}\"];")
        lines.append(f"  hidden -> q{self.start};")
        for q, row in enumerate(self.transitions):
            grouped: dict[int, list[int]] = {}
            for d, t in enumerate(row):
                grouped.setdefault(t, []).append(d)
            for t, digits in sorted(grouped.items()):
                label = ",".join(str(d) for d in digits)
                lines.append(f"  q{q} -> q{t} [label=\"{label}\"];")
        lines.append("}")
        return "\n".join(lines)


def dfao_from_dfa(m: Dfa) -> Dfao:
    """Indicator automaton for the set whose canonical expansions m accepts.

    The start state is cloned if anything points back at it, so looping
    its 0-edge cannot disturb the rest of the machine.
    """
    m = m.canonical()
    rows = [list(row) for row in m.transitions]
    acc = set(m.accepting)
    start = m.start
    reentered = any(t == start for row in rows for t in row)
    if reentered:
        clone = len(rows)
        rows.append(list(rows[start]))
        if start in acc:
            acc.add(clone)
        start = clone
    rows[start][0] = start
    out = tuple(1 if q in acc else 0 for q in range(len(rows)))
    return Dfao(m.base, tuple(tuple(r) for r in rows), start, out)


@dataclass(frozen=True)
class KernelReport:
    """What the subsequence walk saw, depth by depth.

    distinct_by_depth[i] counts the fingerprint classes discovered among
    all nodes of depth <= i, so it never decreases.  closure means the
    walk drained: every child of every examined node matched a class
    already on file.  Because classes are prefix fingerprints this is
    evidence of kernel finiteness, not a proof of it.
    """

    base: int
    depth: int
    prefix_len: int
    distinct_by_depth: tuple[int, ...]
    closure: bool
    representatives: tuple[tuple[int, int], ...] = field(repr=False, default=())

    @property
    def distinct(self) -> int:
        return self.distinct_by_depth[-1]


def kernel_explore(
    seq_source: Callable[[int], int], base: int, depth: int, prefix_len: int
) -> KernelReport:
    """Breadth-first walk of n -> seq(base^i n + j), fingerprint-deduped.

    seq_source must cover indices up to base**depth * (prefix_len - 1)
    + base**depth - 1; when the frontier is still alive at the cap, the
    closure probe reads one level deeper.  Sources raise if asked past
    their range, and that error propagates.
    """
    if depth < 0 or prefix_len < 1:
        raise ValueError("need depth >= 0 and at least one fingerprint term")

    def fingerprint(i: int, j: int) -> tuple[int, ...]:
        step = base**i
        return tuple(seq_source(step * n + j) for n in range(prefix_len))

    seen: dict[tuple[int, ...], tuple[int, int]] = {}
    root = fingerprint(0, 0)
    seen[root] = (0, 0)
    reps = [(0, 0)]
    counts = [1]
    frontier = [(0, 0)]
    drained = False
    for level in range(1, depth + 1):
        nxt = []
        for i, j in frontier:
            step = base**i
            for t in range(base):
                child = (i + 1, t * step + j)
                fp = fingerprint(*child)
                if fp not in seen:
                    seen[fp] = child
                    reps.append(child)
                    nxt.append(child)
        counts.append(len(seen))
        frontier = nxt
        if not frontier:
            drained = True
            counts.extend([len(seen)] * (depth - level))
            break
    if drained:
        closed = True
    else:
        closed = True
        for i, j in frontier:
            step = base**i
            for t in range(base):
                if fingerprint(i + 1, t * step + j) not in seen:
                    closed = False
                    break
            if not closed:
                break
    return KernelReport(
        base=base,
        depth=depth,
        prefix_len=prefix_len,
        distinct_by_depth=tuple(counts),
        closure=closed,
        representatives=tuple(reps),
    )
