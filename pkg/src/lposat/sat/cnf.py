"""Clause databases and the Tseitin transformation."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..prop import PAnd, PIff, PNot, POr, PTRUE, PFALSE, Prop, PVar, VarPool, prop_nodes

__all__ = ["CnfInstance", "tseitin"]


@dataclass
class CnfInstance:
    """Clauses as tuples of non-zero DIMACS literals over variables 1..num_vars.

    ``provenance`` maps a variable id to a human-readable label (symbol bit,
    atom proxy or Tseitin auxiliary); it need not be total.
    """

    num_vars: int
    clauses: list[tuple[int, ...]] = field(default_factory=list)
    provenance: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        for clause in self.clauses:
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, model) -> bool:
        """Whether ``model`` (id -> bool) satisfies every clause."""
        return all(any(model[abs(l)] == (l > 0) for l in c) for c in self.clauses)


def tseitin(phi: Prop, pool: VarPool | None = None, polarity: bool = False) -> CnfInstance:
    """Equisatisfiable CNF with one auxiliary per distinct And/Or/Iff node.

    Negations are folded into literals.  By default each auxiliary is tied to
    its node by full equivalence clauses; with ``polarity=True`` only the
    implications needed for the polarity in which the node occurs are
    emitted.  Auxiliaries are numbered after every variable of ``phi`` and
    of ``pool``.
    """
    order = prop_nodes(phi)
    top = max([n.id for n in order if isinstance(n, PVar)], default=0)
    provenance: dict[int, str] = {}
    if pool is not None:
        top = max(top, pool.top)
        provenance.update(pool.labels)
    if phi is PTRUE:
        return CnfInstance(top, [], provenance)
    if phi is PFALSE:
        return CnfInstance(top, [()], provenance)

    # polarity of each node occurrence: bit 1 positive, bit 2 negative
    pol: dict[int, int] = {id(phi): 1}
    if polarity:
        for node in reversed(order):
            p = pol.get(id(node), 0)
            if isinstance(node, PNot):
                flipped = ((p & 1) << 1) | ((p & 2) >> 1)
                pol[id(node.arg)] = pol.get(id(node.arg), 0) | flipped
            elif isinstance(node, PIff):
                for c in node.children:
                    pol[id(c)] = 3
            else:
                for c in node.children:
                    pol[id(c)] = pol.get(id(c), 0) | p

    lit: dict[int, int] = {}
    clauses: list[tuple[int, ...]] = []
    for node in order:
        if isinstance(node, PVar):
            lit[id(node)] = node.id
            continue
        if isinstance(node, PNot):
            lit[id(node)] = -lit[id(node.arg)]
            continue
        top += 1
        a = top
        lit[id(node)] = a
        provenance[a] = f"tseitin.{type(node).__name__[1:].lower()}"
        p = pol.get(id(node), 3) if polarity else 3
        kids = [lit[id(c)] for c in node.children]
        if isinstance(node, PAnd):
            if p & 1:
                clauses.extend((-a, c) for c in kids)
            if p & 2:
                clauses.append((a, *(-c for c in kids)))
        elif isinstance(node, POr):
            if p & 1:
                clauses.append((-a, *kids))
            if p & 2:
                clauses.extend((a, -c) for c in kids)
        elif isinstance(node, PIff):
            x, y = kids
            if p & 1:
                clauses += [(-a, -x, y), (-a, x, -y)]
            if p & 2:
                clauses += [(a, x, y), (a, -x, -y)]
        else:
            raise TypeError(f"unexpected node {node!r}")
    clauses.append((lit[id(phi)],))
    return CnfInstance(top, clauses, provenance)
