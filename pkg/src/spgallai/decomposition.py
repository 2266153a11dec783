"""Width-2 tree decompositions from 2-tree embeddings and their nice refinement."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, PreconditionError
from .sp import TwoTreeEmbedding

LEAF, INTRODUCE, FORGET, JOIN = 0, 1, 2, 3
KIND_NAMES = {LEAF: "leaf", INTRODUCE: "introduce", FORGET: "forget", JOIN: "join"}


@dataclass
class TreeDecomposition:
    bags: list  # sorted vertex tuples
    parent: list  # -1 at the root
    children: list
    root: int

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


@dataclass
class NiceTreeDecomposition:
    """Nodes are numbered so that every child precedes its parent."""

    kind: list
    vertex: list  # introduced/forgotten vertex, -1 for leaf and join
    bags: list
    children: list
    root: int

    def __len__(self) -> int:
        return len(self.kind)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    def forget_node(self) -> dict:
        """vertex -> the node forgetting it (unique in a valid decomposition)."""
        return {v: i for i, (k, v) in enumerate(zip(self.kind, self.vertex)) if k == FORGET}


def decomposition_from_embedding(e: TwoTreeEmbedding) -> TreeDecomposition:
    """One bag per host triangle; the bag holding the base edge is the root (id 0)."""
    n = e.n
    if n < 2:
        raise PreconditionError("too-small", "need at least two vertices")
    if n == 2:
        return TreeDecomposition([tuple(e.base_edge)], [-1], [[]], 0)
    order = e.elimination_order
    k = len(order)
    pos = {x: i for i, x in enumerate(order)}
    # bag of order[i] gets id k-1-i so the last elimination is bag 0
    bags = [None] * k
    parent = [-1] * k
    for i, x in enumerate(order):
        a, b = e.attachments[i]
        bid = k - 1 - i
        bags[bid] = tuple(sorted((x, a, b)))
        if i == k - 1:
            continue
        pa, pb = pos.get(a, k), pos.get(b, k)
        p = min(pa, pb)
        if p == k:
            p = k - 1
        parent[bid] = k - 1 - p
    children = [[] for _ in range(k)]
    for bid, p in enumerate(parent):
        if p >= 0:
            children[p].append(bid)
    return TreeDecomposition(bags, parent, children, 0)


def _bag_pairs(bags) -> set:
    pairs = set()
    for bag in bags:
        s = sorted(bag)
        for i, u in enumerate(s):
            for v in s[i + 1:]:
                pairs.add((u, v))
    return pairs


def validate_decomposition(td: TreeDecomposition, g: Graph) -> bool:
    covered = set()
    for b in td.bags:
        covered.update(b)
    if covered != set(range(g.n)):
        return False
    if not g.edges <= _bag_pairs(td.bags):
        return False
    bagsets = [set(b) for b in td.bags]
    # tree shape
    seen = set()
    stack = [td.root]
    while stack:
        t = stack.pop()
        if t in seen:
            return False
        seen.add(t)
        for c in td.children[t]:
            if td.parent[c] != t:
                return False
            stack.append(c)
    if len(seen) != len(td.bags):
        return False
    # running intersection: each vertex has exactly one topmost bag
    tops = {}
    for t, b in enumerate(bagsets):
        p = td.parent[t]
        for v in b:
            if p < 0 or v not in bagsets[p]:
                tops[v] = tops.get(v, 0) + 1
    return all(c == 1 for c in tops.values())


class _Builder:
    def __init__(self):
        self.kind, self.vertex, self.bags, self.children = [], [], [], []

    def add(self, kind, vertex, bag, children) -> int:
        self.kind.append(kind)
        self.vertex.append(vertex)
        self.bags.append(bag)
        self.children.append(children)
        return len(self.kind) - 1

    def move(self, node: int, target: tuple) -> int:
        """Forget departing vertices, then introduce arriving ones (ascending ids)."""
        bag = self.bags[node]
        tset = set(target)
        for v in sorted(set(bag) - tset):
            bag = tuple(u for u in bag if u != v)
            node = self.add(FORGET, v, bag, (node,))
        for v in sorted(tset - set(bag)):
            bag = tuple(sorted(bag + (v,)))
            node = self.add(INTRODUCE, v, bag, (node,))
        return node


def make_nice(td: TreeDecomposition) -> NiceTreeDecomposition:
    b = _Builder()
    top = {}
    # iterative post-order
    stack = [(td.root, False)]
    while stack:
        t, done = stack.pop()
        if not done:
            stack.append((t, True))
            for c in reversed(td.children[t]):
                stack.append((c, False))
            continue
        bag = tuple(sorted(td.bags[t]))
        branches = [b.move(top.pop(c), bag) for c in sorted(td.children[t])]
        if not branches:
            leaf = b.add(LEAF, -1, (), ())
            branches = [b.move(leaf, bag)]
        node = branches[0]
        for other in branches[1:]:
            node = b.add(JOIN, -1, bag, (node, other))
        top[t] = node
    root = b.move(top[td.root], ())
    return NiceTreeDecomposition(b.kind, b.vertex, b.bags, b.children, root)


def validate_nice(ntd: NiceTreeDecomposition, g: Graph) -> bool:
    count = len(ntd.kind)
    if not 0 <= ntd.root < count or ntd.bags[ntd.root] != ():
        return False
    parents = [-1] * count
    for i in range(count):
        kind, v, bag, ch = ntd.kind[i], ntd.vertex[i], ntd.bags[i], ntd.children[i]
        if len(set(bag)) != len(bag) or any(not 0 <= u < g.n for u in bag):
            return False
        for c in ch:
            if not 0 <= c < count or parents[c] != -1 or c == i:
                return False
            parents[c] = i
        if kind == LEAF:
            if ch or bag:
                return False
        elif kind == INTRODUCE:
            if len(ch) != 1:
                return False
            cb = set(ntd.bags[ch[0]])
            if v in cb or set(bag) != cb | {v}:
                return False
        elif kind == FORGET:
            if len(ch) != 1:
                return False
            cb = set(ntd.bags[ch[0]])
            if v not in cb or set(bag) != cb - {v}:
                return False
        elif kind == JOIN:
            if len(ch) != 2 or set(ntd.bags[ch[0]]) != set(bag) or set(ntd.bags[ch[1]]) != set(bag):
                return False
        else:
            return False
    # every node reaches the root without cycles
    reached = [False] * count
    stack = [ntd.root]
    reached[ntd.root] = True
    seen = 1
    while stack:
        t = stack.pop()
        for c in ntd.children[t]:
            if reached[c]:
                return False
            reached[c] = True
            seen += 1
            stack.append(c)
    if seen != count:
        return False
    forgets = {}
    for i in range(count):
        if ntd.kind[i] == FORGET:
            forgets[ntd.vertex[i]] = forgets.get(ntd.vertex[i], 0) + 1
    if set(forgets) != set(range(g.n)) or any(c != 1 for c in forgets.values()):
        return False
    return g.edges <= _bag_pairs(ntd.bags)


def nice_to_json(ntd: NiceTreeDecomposition) -> dict:
    return {
        "root": ntd.root,
        "width": ntd.width,
        "nodes": [
            {
                "id": i,
                "kind": KIND_NAMES[ntd.kind[i]],
                "vertex": None if ntd.vertex[i] < 0 else ntd.vertex[i],
                "bag": list(ntd.bags[i]),
                "children": list(ntd.children[i]),
            }
            for i in range(len(ntd.kind))
        ],
    }
