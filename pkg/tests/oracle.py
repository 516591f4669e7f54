"""Independent finite-model oracle used to cross-check the reasoner.

Decides "is there a model with at most N domain elements" by exhaustive
search over all interpretations of that size, implemented as propositional
satisfiability: one boolean per class-membership bit, role-edge bit and
individual placement, plus defining bits for every compound subconcept.
The search engine is a small DPLL; it enumerates the same space a nested
loop over all extensions would, just with pruning, and never consults the
package's saturation code.
"""

from __future__ import annotations

import itertools

from missing_why.syntax import (
    And,
    Axiom,
    Bottom,
    ClassAssertion,
    Concept,
    DisjointClasses,
    EquivalentClasses,
    Exists,
    Name,
    RoleAssertion,
    SubClassOf,
    Top,
)

MAX_DOMAIN = 3


def dpll(clauses: list[tuple[int, ...]]) -> bool:
    """Satisfiability of an integer CNF (DIMACS-style literals)."""
    assign: dict[int, bool] = {}

    def simplify(cls: list[tuple[int, ...]], lit: int):
        out = []
        for c in cls:
            if lit in c:
                continue
            if -lit in c:
                c = tuple(x for x in c if x != -lit)
                if not c:
                    return None
            out.append(c)
        return out

    def rec(cls: list[tuple[int, ...]]) -> bool:
        while True:
            unit = next((c[0] for c in cls if len(c) == 1), None)
            if unit is None:
                break
            cls = simplify(cls, unit)
            if cls is None:
                return False
        if not cls:
            return True
        # branch on the most frequent literal, shortest clauses weighted higher
        scores: dict[int, float] = {}
        for c in cls:
            w = 2.0 ** -len(c)
            for lit in c:
                scores[lit] = scores.get(lit, 0.0) + w
        lit = max(scores, key=lambda l: scores[l] + scores.get(-l, 0.0))
        for choice in (lit, -lit):
            sub = simplify(cls, choice)
            if sub is not None and rec(sub):
                return True
        return False

    return rec(list(clauses))


class _Encoder:
    def __init__(self, domain_size: int):
        self.n = domain_size
        self.counter = 0
        self.clauses: list[tuple[int, ...]] = []
        self.cache: dict[tuple, int] = {}
        self.true_var = self.new_var()
        self.clauses.append((self.true_var,))

    def new_var(self) -> int:
        self.counter += 1
        return self.counter

    def add(self, *lits: int) -> None:
        self.clauses.append(tuple(lits))

    def class_bit(self, name: str, d: int) -> int:
        key = ("cls", name, d)
        if key not in self.cache:
            self.cache[key] = self.new_var()
        return self.cache[key]

    def role_bit(self, role: str, d: int, e: int) -> int:
        key = ("role", role, d, e)
        if key not in self.cache:
            self.cache[key] = self.new_var()
        return self.cache[key]

    def individual_bit(self, ind: str, d: int) -> int:
        key = ("ind", ind, d)
        if key not in self.cache:
            for e in range(self.n):
                self.cache[("ind", ind, e)] = self.new_var()
            bits = [self.cache[("ind", ind, e)] for e in range(self.n)]
            self.add(*bits)
            for a, b in itertools.combinations(bits, 2):
                self.add(-a, -b)
        return self.cache[key]

    def concept_bit(self, c: Concept, d: int) -> int:
        """Variable equivalent to 'element d satisfies c', with defining clauses."""
        if isinstance(c, Top):
            return self.true_var
        if isinstance(c, Bottom):
            return -self.true_var
        if isinstance(c, Name):
            return self.class_bit(c.name, d)
        key = ("def", c, d)
        if key in self.cache:
            return self.cache[key]
        v = self.new_var()
        self.cache[key] = v
        if isinstance(c, And):
            parts = [self.concept_bit(a, d) for a in c.args]
            for p in parts:
                self.add(-v, p)
            self.add(v, *[-p for p in parts])
        elif isinstance(c, Exists):
            witnesses = []
            for e in range(self.n):
                r = self.role_bit(c.role, d, e)
                f = self.concept_bit(c.filler, e)
                w = self.new_var()
                self.add(-w, r)
                self.add(-w, f)
                self.add(w, -r, -f)
                witnesses.append(w)
            self.add(-v, *witnesses)
            for w in witnesses:
                self.add(v, -w)
        else:
            raise TypeError(f"oracle cannot encode {c!r}")
        return v

    def require(self, axiom: Axiom) -> None:
        if isinstance(axiom, SubClassOf):
            for d in range(self.n):
                self.add(-self.concept_bit(axiom.sub, d), self.concept_bit(axiom.sup, d))
        elif isinstance(axiom, EquivalentClasses):
            cs = axiom.concepts
            for i in range(len(cs)):
                for j in range(len(cs)):
                    if i != j:
                        self.require(SubClassOf(cs[i], cs[j]))
        elif isinstance(axiom, DisjointClasses):
            cs = axiom.concepts
            for i, j in itertools.combinations(range(len(cs)), 2):
                for d in range(self.n):
                    self.add(-self.concept_bit(cs[i], d), -self.concept_bit(cs[j], d))
        elif isinstance(axiom, ClassAssertion):
            for d in range(self.n):
                self.add(-self.individual_bit(axiom.individual, d), self.concept_bit(axiom.concept, d))
        elif isinstance(axiom, RoleAssertion):
            for d in range(self.n):
                for e in range(self.n):
                    self.add(
                        -self.individual_bit(axiom.subject, d),
                        -self.individual_bit(axiom.target, e),
                        self.role_bit(axiom.role, d, e),
                    )
        else:
            raise TypeError(f"oracle cannot encode {axiom!r}")

    def forbid(self, axiom: Axiom) -> None:
        """Require the axiom to be violated somewhere."""
        choices: list[int] = []
        if isinstance(axiom, SubClassOf):
            for d in range(self.n):
                q = self.new_var()
                self.add(-q, self.concept_bit(axiom.sub, d))
                self.add(-q, -self.concept_bit(axiom.sup, d))
                choices.append(q)
        elif isinstance(axiom, EquivalentClasses):
            cs = axiom.concepts
            for i in range(len(cs)):
                for j in range(len(cs)):
                    if i == j:
                        continue
                    for d in range(self.n):
                        q = self.new_var()
                        self.add(-q, self.concept_bit(cs[i], d))
                        self.add(-q, -self.concept_bit(cs[j], d))
                        choices.append(q)
        elif isinstance(axiom, DisjointClasses):
            cs = axiom.concepts
            for i, j in itertools.combinations(range(len(cs)), 2):
                for d in range(self.n):
                    q = self.new_var()
                    self.add(-q, self.concept_bit(cs[i], d))
                    self.add(-q, self.concept_bit(cs[j], d))
                    choices.append(q)
        elif isinstance(axiom, ClassAssertion):
            for d in range(self.n):
                q = self.new_var()
                self.add(-q, self.individual_bit(axiom.individual, d))
                self.add(-q, -self.concept_bit(axiom.concept, d))
                choices.append(q)
        elif isinstance(axiom, RoleAssertion):
            for d in range(self.n):
                for e in range(self.n):
                    q = self.new_var()
                    self.add(-q, self.individual_bit(axiom.subject, d))
                    self.add(-q, self.individual_bit(axiom.target, e))
                    self.add(-q, -self.role_bit(axiom.role, d, e))
                    choices.append(q)
        else:
            raise TypeError(f"oracle cannot encode {axiom!r}")
        self.add(*choices)


def has_model(axioms: list[Axiom], domain_size: int) -> bool:
    enc = _Encoder(domain_size)
    for a in axioms:
        enc.require(a)
    return dpll(enc.clauses)


def has_countermodel(axioms: list[Axiom], axiom: Axiom, domain_size: int) -> bool:
    enc = _Encoder(domain_size)
    for a in axioms:
        enc.require(a)
    enc.forbid(axiom)
    return dpll(enc.clauses)


def oracle_consistent(axioms: list[Axiom], max_domain: int = MAX_DOMAIN) -> bool:
    return any(has_model(axioms, n) for n in range(1, max_domain + 1))


def oracle_entails(axioms: list[Axiom], axiom: Axiom, max_domain: int = MAX_DOMAIN) -> bool:
    return not any(has_countermodel(axioms, axiom, n) for n in range(1, max_domain + 1))
