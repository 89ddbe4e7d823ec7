"""Small finite groups with named elements, as explicit multiplication
tables.  Used as deck groups for covers and as abstract models of
symmetry groups."""

from __future__ import annotations


class GroupError(ValueError):
    pass


class Group:
    """A finite group given by its multiplication table."""

    def __init__(self, elements, mul, identity, name=None):
        self.name = name
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise GroupError("duplicate elements")
        self._set = set(self.elements)
        self._mul = dict(mul) if not callable(mul) else {
            (a, b): mul(a, b) for a in self.elements for b in self.elements
        }
        self.identity = identity
        if identity not in self._set:
            raise GroupError("identity not among the elements")
        for a in self.elements:
            if self._mul[(self.identity, a)] != a or self._mul[(a, self.identity)] != a:
                raise GroupError("identity does not act as identity")
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self._mul[(a, b)] == identity:
                    self._inv[a] = b
            if a not in self._inv:
                raise GroupError("element %r has no inverse" % (a,))
        # associativity spot-check is O(n^3); n here is tiny
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self._mul[(self._mul[(a, b)], c)] != self._mul[(a, self._mul[(b, c)])]:
                        raise GroupError("multiplication is not associative")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, a):
        return a in self._set

    def mul(self, a, b):
        return self._mul[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def element_order(self, a):
        x = a
        k = 1
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def generated(self, gens):
        """The subgroup generated by the given elements."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    for y in (self.mul(g, x), self.mul(self.inv(g), x)):
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
            frontier = nxt
        return seen

    def is_abelian(self):
        return all(
            self.mul(a, b) == self.mul(b, a) for a in self.elements for b in self.elements
        )


def cyclic(n):
    return Group(range(n), lambda a, b: (a + b) % n, 0, name="cyclic %d" % n)


def direct_product(g1: Group, g2: Group):
    elements = [(a, b) for a in g1.elements for b in g2.elements]
    name = None
    if g1.name and g2.name:
        name = "%s x %s" % (g1.name, g2.name)
    return Group(
        elements,
        lambda x, y: (g1.mul(x[0], y[0]), g2.mul(x[1], y[1])),
        (g1.identity, g2.identity),
        name=name,
    )


def quaternion():
    """Q8 = {+-1, +-i, +-j, +-k} with the usual multiplication."""
    units = ["1", "i", "j", "k"]
    base = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("i", "i"): ("1", -1), ("i", "j"): ("k", 1), ("i", "k"): ("j", -1),
        ("j", "1"): ("j", 1), ("j", "i"): ("k", -1), ("j", "j"): ("1", -1), ("j", "k"): ("i", 1),
        ("k", "1"): ("k", 1), ("k", "i"): ("j", 1), ("k", "j"): ("i", -1), ("k", "k"): ("1", -1),
    }
    elements = [s + u if s else u for u in units for s in ("", "-")]

    def split(x):
        return (x[1:], -1) if x.startswith("-") else (x, 1)

    def mul(x, y):
        ux, sx = split(x)
        uy, sy = split(y)
        u, s = base[(ux, uy)]
        s *= sx * sy
        return u if s == 1 else "-" + u

    return Group(elements, mul, "1", name="quaternion")


def dihedral(n):
    """D_n of order 2n: elements (r, s) acting as x -> r + s*x mod n."""
    elements = [(r, s) for r in range(n) for s in (1, -1)]

    def mul(a, b):
        # (r1,s1) after (r2,s2): x -> r1 + s1*(r2 + s2*x)
        return ((a[0] + a[1] * b[0]) % n, a[1] * b[1])

    return Group(elements, mul, (0, 1), name="dihedral %d" % n)


def handlebody_torus_group(m):
    """(Z_m x Z_m) semidirect Z_2, the sign acting by negation; order 2m^2."""
    elements = [((a, b), s) for a in range(m) for b in range(m) for s in (1, -1)]

    def mul(x, y):
        (a, b), s = x
        (c, d), t = y
        return (((a + s * c) % m, (b + s * d) % m), s * t)

    return Group(elements, mul, ((0, 0), 1), name="handlebody_torus %d" % m)


def group_by_name(name: str) -> Group:
    """Reconstruct a standard group from its ``name`` string.

    Understood: ``cyclic N``, ``dihedral N``, ``quaternion``,
    ``handlebody_torus N``, and ``x``-separated direct products thereof
    (left-associated, as direct_product produces them).
    """
    parts = [p.strip() for p in name.split(" x ")]
    g = _atom_by_name(parts[0])
    for p in parts[1:]:
        g = direct_product(g, _atom_by_name(p))
    return g


def _atom_by_name(name: str) -> Group:
    words = name.split()
    if words == ["quaternion"]:
        return quaternion()
    if len(words) == 2:
        kind, arg = words
        if kind == "cyclic":
            return cyclic(int(arg))
        if kind == "dihedral":
            return dihedral(int(arg))
        if kind == "handlebody_torus":
            return handlebody_torus_group(int(arg))
    raise GroupError("unknown group name %r" % name)


def homomorphism(src: Group, dst: Group, images: dict):
    """Validate a map on all elements as a homomorphism and return it."""
    if set(images) != set(src.elements):
        raise GroupError("images must be given on every element")
    for a in src.elements:
        if images[a] not in dst:
            raise GroupError("image %r not in the target group" % (images[a],))
    for a in src.elements:
        for b in src.elements:
            if images[src.mul(a, b)] != dst.mul(images[a], images[b]):
                raise GroupError("not a homomorphism at (%r, %r)" % (a, b))
    return images


def hom_from_generator_images(src: Group, dst: Group, gen_images: dict):
    """Extend images of generators to the whole group, if consistent."""
    images = {src.identity: dst.identity}
    frontier = [src.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in gen_images.items():
                y = src.mul(g, x)
                im = dst.mul(h, images[x])
                if y in images:
                    if images[y] != im:
                        raise GroupError("generator images are inconsistent")
                else:
                    images[y] = im
                    nxt.append(y)
        frontier = nxt
    if len(images) != len(src):
        raise GroupError("generators do not generate the source group")
    return homomorphism(src, dst, images)
