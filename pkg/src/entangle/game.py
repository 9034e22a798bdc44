"""Exact entanglement via the cops-and-thief reachability game.

A position is ``(v, C, mover)``: the thief stands on ``v``, cops occupy ``C``.
Cops move first after the thief picks a start vertex; the thief must then
leave along an arc whose head carries no cop, and is caught when he cannot.
Cops win exactly the finite plays, so their winning region is the attractor
of the dead thief positions.

The solver enumerates every cop set of size at most ``k`` once, numbers
positions ``s * n + v`` (``s`` the cop-set index) and computes the attractor
with vectorised sweeps.  Each sweep updates all thief positions from the
current cops region and then all cops positions from the new thief region,
so the sweep number doubles as an attractor rank: a thief position first won
in sweep ``i`` gets rank ``2i``, a cops position ``2i + 1``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator

import numpy as np

from .errors import BudgetError, InputError
from .graph import Digraph, Graph

STANDARD = "standard"
GENERALIZED = "generalized"
COPS = "cops"
THIEF = "thief"

_RULE_ALIASES = {"standard": STANDARD, "std": STANDARD,
                 "generalized": GENERALIZED, "gen": GENERALIZED}

DEFAULT_BUDGET = 4_000_000


def normalize_rules(rules: str) -> str:
    try:
        return _RULE_ALIASES[rules]
    except KeyError:
        raise InputError(f"unknown rule set {rules!r}; use standard or generalized") from None


def arena_budget() -> int:
    """Maximum number of positions a single solve may allocate."""
    raw = os.environ.get("ENTANGLE_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise InputError(f"ENTANGLE_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise InputError("ENTANGLE_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


def arena_size(n: int, k: int) -> int:
    """Number of positions: n * sum_{i<=k} C(n, i) * 2 movers."""
    k = min(k, n)
    return 2 * n * sum(comb(n, i) for i in range(k + 1))


@dataclass(frozen=True)
class GamePosition:
    v: int
    cops: frozenset[int]
    mover: str

    def __repr__(self):
        cops = "{" + ",".join(map(str, sorted(self.cops))) + "}"
        return f"({self.v}, {cops}, {self.mover})"


def cops_moves(p: GamePosition, k: int, rules: str = STANDARD) -> set[GamePosition]:
    """All legal cops replies from ``p`` (reference implementation)."""
    rules = normalize_rules(rules)
    if p.mover != COPS:
        raise InputError("cops_moves needs a position with cops to move")
    v, C = p.v, p.cops
    out: set[frozenset[int]] = set()
    if rules == STANDARD:
        out.add(C)
        if len(C | {v}) <= k:
            out.add(C | {v})
        for x in C:
            out.add((C - {x}) | {v})
    else:
        members = sorted(C)
        for r in range(len(members) + 1):
            for sub in combinations(members, r):
                sub = frozenset(sub)
                out.add(sub)
                if len(sub | {v}) <= k:
                    out.add(sub | {v})
    return {GamePosition(v, c, THIEF) for c in out}


def thief_moves(p: GamePosition, g: Digraph | Graph) -> set[GamePosition]:
    """Thief's legal moves; the empty set means he is caught."""
    if p.mover != THIEF:
        raise InputError("thief_moves needs a position with the thief to move")
    succ = g.succ[p.v] if isinstance(g, Digraph) else sorted(g.adj[p.v])
    return {GamePosition(w, p.cops, COPS) for w in succ if w not in p.cops}


def _cop_sets(n: int, k: int) -> list[int]:
    masks = []
    for size in range(min(k, n) + 1):
        for combo in combinations(range(n), size):
            masks.append(sum(1 << x for x in combo))
    return masks


def _members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class _Arena:
    """Index tables shared by the sweeps and the strategy extraction."""

    def __init__(self, g: Digraph, k: int, rules: str):
        n = g.n
        self.n = n
        self.k = k
        self.masks = _cop_sets(n, k)
        S = self.S = len(self.masks)
        index = {m: i for i, m in enumerate(self.masks)}
        self.index = index
        N = S * n
        self.N = N
        # two sentinels past the end: N is always false, N + 1 always true
        self.FALSE = N
        self.TRUE = N + 1

        members = [_members(m) for m in self.masks]
        inset = np.zeros((S, n), dtype=bool)
        for s, mem in enumerate(members):
            inset[s, mem] = True

        # place[s, v]: cop set after adding v to s, -1 when over budget
        place = np.full((S, n), -1, dtype=np.int64)
        for s, mask in enumerate(self.masks):
            if len(members[s]) < k:
                for v in range(n):
                    place[s, v] = index[mask | (1 << v)]
            else:
                place[s, inset[s]] = s
        self.place = place

        base = (np.arange(S, dtype=np.int64) * n)[:, None]
        cols = np.arange(n, dtype=np.int64)[None, :]

        def flat(sets):
            return np.where(sets >= 0, sets * n + cols, self.FALSE)

        cops_succ = []
        if rules == STANDARD:
            cops_succ.append(base + cols)                  # skip
            cops_succ.append(flat(place))                  # place on v
            rem = np.full((S, k), -1, dtype=np.int64)
            for s, mem in enumerate(members):
                for j, x in enumerate(mem):
                    rem[s, j] = index[self.masks[s] & ~(1 << x)]
            for j in range(k):                             # move cop j to v
                r = rem[:, j]
                moved = np.where(r[:, None] >= 0, place[np.maximum(r, 0)], -1)
                cops_succ.append(flat(moved))
        else:
            width = 1 << min(k, n)
            subs = np.full((S, width), -1, dtype=np.int64)
            for s, mem in enumerate(members):
                j = 0
                for r in range(len(mem) + 1):
                    for combo in combinations(mem, r):
                        subs[s, j] = index[sum(1 << x for x in combo)]
                        j += 1
            for j in range(width):
                sub = subs[:, j]
                valid = sub[:, None] >= 0
                kept = np.where(valid, sub[:, None], -1) * np.ones((1, n), dtype=np.int64)
                cops_succ.append(flat(kept))
                added = np.where(valid, place[np.maximum(sub, 0)], -1)
                cops_succ.append(flat(added))
        self.cops_succ = [a.reshape(-1) for a in cops_succ]

        maxdeg = max((len(s) for s in g.succ), default=0)
        thief_succ = []
        for d in range(maxdeg):
            tgt = np.array([s[d] if d < len(s) else -1 for s in g.succ], dtype=np.int64)
            has = tgt >= 0
            safe_tgt = np.where(has, tgt, 0)
            blocked = ~has[None, :] | inset[:, safe_tgt]
            thief_succ.append(np.where(blocked, self.TRUE, base + safe_tgt[None, :]).reshape(-1))
        self.thief_succ = thief_succ


@dataclass
class ArenaSolution:
    """Solved arena for one cop budget.

    Arrays are indexed by ``s * n + v`` where ``s`` indexes ``masks``.
    ``rank_*`` is -1 outside the cops region.  ``cops_strategy`` maps each
    cops-won cops position to the thief position it moves to;
    ``thief_strategy`` maps each thief position outside the cops region to
    the cops position the thief moves to.  Both hold -1 elsewhere.
    """

    n: int
    k: int
    rules: str
    masks: list[int]
    cops_win_cops: np.ndarray
    cops_win_thief: np.ndarray
    rank_cops: np.ndarray
    rank_thief: np.ndarray
    cops_strategy: np.ndarray
    thief_strategy: np.ndarray
    sweeps: int
    index: dict[int, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {m: i for i, m in enumerate(self.masks)}

    @property
    def cops_win(self) -> bool:
        """Cops win iff every start ``(v0, {}, Cops)`` lies in their region."""
        return bool(self.cops_win_cops[: self.n].all()) if self.n else True

    @property
    def winner(self) -> str:
        return COPS if self.cops_win else THIEF

    @property
    def num_positions(self) -> int:
        return 2 * len(self.masks) * self.n

    def flat(self, p: GamePosition) -> int:
        mask = sum(1 << x for x in p.cops)
        return self.index[mask] * self.n + p.v

    def position(self, i: int, mover: str) -> GamePosition:
        s, v = divmod(int(i), self.n)
        return GamePosition(v, frozenset(_members(self.masks[s])), mover)

    def is_cops_won(self, p: GamePosition) -> bool:
        arr = self.cops_win_cops if p.mover == COPS else self.cops_win_thief
        return bool(arr[self.flat(p)])

    def rank(self, p: GamePosition) -> int:
        arr = self.rank_cops if p.mover == COPS else self.rank_thief
        return int(arr[self.flat(p)])

    def strategy(self, p: GamePosition) -> GamePosition | None:
        """The winner's chosen successor at ``p``, if ``p``'s mover owns one."""
        i = self.flat(p)
        if p.mover == COPS:
            j = self.cops_strategy[i]
            return None if j < 0 else self.position(j, THIEF)
        j = self.thief_strategy[i]
        return None if j < 0 else self.position(j, COPS)

    def cops_win_positions(self) -> Iterator[GamePosition]:
        for i in np.flatnonzero(self.cops_win_cops):
            yield self.position(i, COPS)
        for i in np.flatnonzero(self.cops_win_thief):
            yield self.position(i, THIEF)

    def to_certificate(self) -> dict:
        """Structured certificate: budget, winner and the winner's strategy."""
        moves = []
        if self.cops_win:
            for i in np.flatnonzero(self.cops_strategy >= 0):
                moves.append([_pos_json(self.position(i, COPS)),
                              _pos_json(self.position(self.cops_strategy[i], THIEF))])
        else:
            for i in np.flatnonzero(self.thief_strategy >= 0):
                moves.append([_pos_json(self.position(i, THIEF)),
                              _pos_json(self.position(self.thief_strategy[i], COPS))])
        return {"schema": "entangle.certificate/1", "k": self.k, "rules": self.rules,
                "n": self.n, "winner": self.winner, "strategy": moves}


def _pos_json(p: GamePosition) -> dict:
    return {"v": p.v, "cops": sorted(p.cops), "mover": p.mover}


def _as_digraph(g: Graph | Digraph) -> Digraph:
    return g.to_digraph() if isinstance(g, Graph) else g


def solve(g: Graph | Digraph, k: int, rules: str = STANDARD,
          budget: int | None = None) -> ArenaSolution:
    """Solve the game with ``k`` cops; undirected input is made symmetric."""
    rules = normalize_rules(rules)
    dg = _as_digraph(g)
    n = dg.n
    if k < 0:
        raise InputError("cop budget must be non-negative")
    if k > n:
        raise InputError(f"cop budget {k} exceeds vertex count {n}")
    budget = arena_budget() if budget is None else budget
    size = arena_size(n, k)
    if size > budget:
        raise BudgetError(f"arena for k={k} has {size} positions, budget is {budget}",
                          estimate=size)
    if n == 0:
        empty = np.zeros(0, dtype=bool)
        none = np.zeros(0, dtype=np.int64)
        return ArenaSolution(0, k, rules, [0], empty, empty, none, none, none, none, 0)

    A = _Arena(dg, k, rules)
    N = A.N
    T = np.zeros(N + 2, dtype=bool)
    C = np.zeros(N + 2, dtype=bool)
    T[A.TRUE] = C[A.TRUE] = True
    rank_t = np.full(N, -1, dtype=np.int64)
    rank_c = np.full(N, -1, dtype=np.int64)

    sweep = 0
    while True:
        new_t = np.ones(N, dtype=bool)
        for idx in A.thief_succ:
            new_t &= C[idx]
        added_t = new_t & ~T[:N]
        rank_t[added_t] = 2 * sweep
        T[:N] |= new_t

        new_c = np.zeros(N, dtype=bool)
        for idx in A.cops_succ:
            new_c |= T[idx]
        added_c = new_c & ~C[:N]
        rank_c[added_c] = 2 * sweep + 1
        C[:N] |= new_c
        sweep += 1
        if not added_t.any() and not added_c.any():
            break

    big = np.iinfo(np.int64).max
    rank_t_ext = np.concatenate([rank_t, [-1, -1]])
    cops_strat = np.full(N, big, dtype=np.int64)
    own = rank_c
    for idx in A.cops_succ:
        r = rank_t_ext[idx]
        ok = (r >= 0) & (r < own) & (idx < N)
        cops_strat = np.where(ok & (idx < cops_strat), idx, cops_strat)
    cops_strat[cops_strat == big] = -1

    won_c = C[:N]
    thief_strat = np.full(N, big, dtype=np.int64)
    for idx in A.thief_succ:
        ok = (idx < N) & ~C[np.minimum(idx, N)] & ~T[:N]
        thief_strat = np.where(ok & (idx < thief_strat), idx, thief_strat)
    thief_strat[thief_strat == big] = -1

    return ArenaSolution(n, k, rules, A.masks, won_c.copy(), T[:N].copy(), rank_c, rank_t,
                         cops_strat, thief_strat, sweep, A.index)


@dataclass
class EntanglementResult:
    value: int
    per_budget_winners: dict[int, str]
    certificates: dict[int, ArenaSolution]
    rules: str = STANDARD


def entanglement(g: Graph | Digraph, rules: str = STANDARD, max_k: int | None = None,
                 start_k: int = 0, cross_check: bool = False,
                 budget: int | None = None) -> EntanglementResult:
    """Least k for which cops win; tries k = start_k, start_k + 1, ...

    ``start_k`` must be a known lower bound (cops lose with start_k - 1).
    With ``cross_check`` every budget is also solved under the other rule
    set and a disagreement raises.
    """
    from .errors import InvariantError

    rules = normalize_rules(rules)
    n = g.n
    top = n if max_k is None else min(max_k, n)
    winners: dict[int, str] = {}
    certs: dict[int, ArenaSolution] = {}
    prev = None
    for k in range(start_k, top + 1):
        try:
            sol = solve(g, k, rules, budget)
        except BudgetError as exc:
            exc.lower_bound = k
            raise
        if cross_check:
            other = GENERALIZED if rules == STANDARD else STANDARD
            if solve(g, k, other, budget).winner != sol.winner:
                raise InvariantError(f"rule sets disagree at k={k}")
        winners[k] = sol.winner
        if sol.cops_win:
            if prev is not None:
                certs[k - 1] = prev
            certs[k] = sol
            return EntanglementResult(k, winners, certs, rules)
        prev = sol
    raise BudgetError(f"cops do not win with up to {top} cops", lower_bound=top + 1)


@dataclass
class VerificationReport:
    """Outcome of an independent strategy check.

    ``position`` is the first offending position when ``ok`` is False.
    ``cycle`` is the repeating stretch of a replayed thief win, as a list of
    thief positions, when the thief is the winner.
    """

    ok: bool
    reason: str | None = None
    position: GamePosition | None = None
    cycle: list[GamePosition] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _cop_moves_mask(v: int, mask: int, k: int, rules: str) -> set[int]:
    bit = 1 << v
    out = set()
    if rules == STANDARD:
        out.add(mask)
        if bin(mask | bit).count("1") <= k:
            out.add(mask | bit)
        for x in _members(mask):
            out.add((mask & ~(1 << x)) | bit)
    else:
        mem = _members(mask)
        for r in range(len(mem) + 1):
            for combo in combinations(mem, r):
                sub = sum(1 << x for x in combo)
                out.add(sub)
                if bin(sub | bit).count("1") <= k:
                    out.add(sub | bit)
    return out


def verify_strategy(g: Graph | Digraph, k: int, rules: str, sol: ArenaSolution) -> VerificationReport:
    """Re-derive every move from the rules and check the solution's claims.

    Cops-won thief positions must have only cops-won successors of lower
    rank; cops-won cops positions must carry a legal strategy move to a
    lower-ranked cops-won thief position; outside the region the thief's
    strategy must be legal and stay outside, and no cops move may enter it.
    Finally the winner claim is checked against the initial positions and,
    for a thief win, a play against a chasing cops policy is replayed until
    it repeats.
    """
    rules = normalize_rules(rules)
    dg = _as_digraph(g)
    n = dg.n

    def fail(reason, v=None, mask=0, mover=COPS):
        pos = None if v is None else GamePosition(v, frozenset(_members(mask)), mover)
        return VerificationReport(False, reason, pos)

    if (sol.n, sol.k, sol.rules) != (n, k, rules):
        return fail(f"solution is for n={sol.n}, k={sol.k}, {sol.rules}")
    masks = [sum(1 << x for x in c) for size in range(min(k, n) + 1)
             for c in combinations(range(n), size)]
    if sorted(masks) != sorted(sol.masks):
        return fail("cop sets of the solution do not match the budget")
    idx = sol.index

    def at(mask, v):
        return idx[mask] * n + v

    won_c, won_t = sol.cops_win_cops, sol.cops_win_thief
    rc, rt = sol.rank_cops, sol.rank_thief
    for mask in masks:
        for v in range(n):
            i = at(mask, v)
            succ_t = [w for w in dg.succ[v] if not mask >> w & 1]
            if won_t[i]:
                for w in succ_t:
                    j = at(mask, w)
                    if not won_c[j]:
                        return fail("thief escapes a cops-won position", v, mask, THIEF)
                    if not 0 <= rc[j] < rt[i]:
                        return fail("thief successor does not lower the rank", v, mask, THIEF)
            else:
                j = int(sol.thief_strategy[i])
                if j < 0:
                    return fail("thief position outside the region has no strategy", v, mask, THIEF)
                s2, w = divmod(j, n)
                if sol.masks[s2] != mask or w not in succ_t:
                    return fail("thief strategy move is illegal", v, mask, THIEF)
                if won_c[j]:
                    return fail("thief strategy enters the cops region", v, mask, THIEF)
            moves = _cop_moves_mask(v, mask, k, rules)
            if won_c[i]:
                j = int(sol.cops_strategy[i])
                if j < 0:
                    return fail("cops-won position has no strategy", v, mask, COPS)
                s2, w = divmod(j, n)
                if w != v or sol.masks[s2] not in moves:
                    return fail("cops strategy move is illegal", v, mask, COPS)
                if not won_t[j] or not 0 <= rt[j] < rc[i]:
                    return fail("cops strategy does not lower the rank", v, mask, COPS)
            else:
                for m2 in moves:
                    if won_t[at(m2, v)]:
                        return fail("cops could enter their region but the position is unclaimed",
                                    v, mask, COPS)
    claimed = all(won_c[at(0, v)] for v in range(n))
    if claimed != sol.cops_win:
        return fail("winner claim disagrees with the initial positions")
    if sol.cops_win:
        return VerificationReport(True)
    start = next(v for v in range(n) if not won_c[at(0, v)])
    return VerificationReport(True, cycle=_replay_thief(dg, k, sol, start))


def _replay_thief(dg: Digraph, k: int, sol: ArenaSolution, start: int) -> list[GamePosition]:
    """Thief strategy against cops that always land on the thief's vertex.

    The cops place a new cop while the budget allows and otherwise move the
    cop that has stood still longest.  Returns the thief positions of the
    cycle the deterministic play falls into.
    """
    n = dg.n
    v, order = start, ()
    seen: dict[tuple, int] = {}
    trail: list[GamePosition] = []
    while (v, order) not in seen:
        seen[(v, order)] = len(trail)
        if k > 0 and v not in order:
            order = (order + (v,)) if len(order) < k else (order[1:] + (v,))
        mask = sum(1 << x for x in order)
        trail.append(GamePosition(v, frozenset(order), THIEF))
        j = int(sol.thief_strategy[sol.index[mask] * n + v])
        v = j % n
    return trail[seen[(v, order)]:]


def thief_cycle_through(g: Graph | Digraph, sol: ArenaSolution,
                        groups: list[set[int]]) -> list[GamePosition] | None:
    """A play the cops can force against the thief's strategy that loops
    through a vertex of every group, or None.

    The thief follows ``sol.thief_strategy``; the cops may answer with any
    legal move.  Plays stay outside the cops region, so every such loop is an
    infinite thief win.  Returned as the thief positions of one closed walk.
    """
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import breadth_first_order, connected_components

    if sol.cops_win:
        return None
    dg = _as_digraph(g)
    n = dg.n
    A = _Arena(dg, sol.k, sol.rules)
    N = A.N
    live = np.flatnonzero(~sol.cops_win_thief)
    heads = sol.thief_strategy[live]
    src, dst = [], []
    for succ in A.cops_succ:
        nxt = succ[heads]
        ok = nxt < N
        ok[ok] &= ~sol.cops_win_thief[nxt[ok]]
        src.append(live[ok])
        dst.append(nxt[ok])
    src, dst = np.concatenate(src), np.concatenate(dst)
    adj = csr_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    # reachable from the thief's opening moves
    starts = [A.cops_succ[m][v] for v in range(n) if not sol.cops_win_cops[v]
              for m in range(len(A.cops_succ))]
    starts = {int(s) for s in starts if s < N and not sol.cops_win_thief[s]}
    reach = np.zeros(N, dtype=bool)
    for s in starts:
        if not reach[s]:
            reach[breadth_first_order(adj, s, return_predecessors=False)] = True
    _, label = connected_components(adj, directed=True, connection="strong")
    verts = np.arange(N) % n
    for comp in np.unique(label[reach]):
        members = np.flatnonzero((label == comp) & reach)
        if len(members) < 2 and not adj[members[0], members[0]]:
            continue
        picks = []
        for grp in groups:
            hit = members[np.isin(verts[members], list(grp))]
            if not len(hit):
                break
            picks.append(int(hit[0]))
        else:
            return _closed_walk(adj, picks, sol)
    return None


def _closed_walk(adj, picks: list[int], sol: ArenaSolution) -> list[GamePosition]:
    from scipy.sparse.csgraph import breadth_first_order

    walk: list[int] = []
    stops = picks + [picks[0]]
    for a, b in zip(stops, stops[1:]):
        _, pred = breadth_first_order(adj, a, return_predecessors=True)
        seg = [b]
        while seg[-1] != a:
            seg.append(int(pred[seg[-1]]))
        walk += seg[::-1][:-1]
    return [sol.position(i, THIEF) for i in walk]
