"""Decomposition of a non-copying transduction into an immersive transduction
followed by a perturbation, given its edge formula in Gaifman normal form.

The construction marks each basic-local sentence with a fresh vertex
predicate, replaces the far regime (pairs beyond distance 2t) by a
disjunction of unary products, corrects the near regime with a strongly
2t-local edge formula, and realizes the far products as a sequence of
subset complementations.  Verification replays the construction's explicit
predicate valuations per coloring and compares outputs exactly.

Computing the far-product decomposition from an arbitrary formula requires
local type analysis, which is out of scope here: binary leaves must be
declared either near (strongly 2t-local, hence false on far pairs) or as an
explicit product of unary formulas, and the declarations are checked against
the verification corpus.
"""

from __future__ import annotations

import itertools
import shlex
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import BudgetExceededError
from .graphs import ColoredGraph, Graph, copy_operation, distance_matrix
from .logic import (TRUE, And, DistLeq, Exists, FalseF, Formula, Iff,
                    LocalityReport, Not, PredAtom, TrueF, all_vars,
                    conjunction, disjunction, evaluate, free_vars,
                    is_r_local_on_corpus, is_strongly_r_local_on_corpus, parse,
                    rename_free, to_text)
from .transduction import (Copy, Expand, Interpret, Interpretation,
                           SubsetComplement, Transduction, apply_with_coloring,
                           coloring_space_bound, witness_search)

MARKER_PREFIX = "__T"
SUBSET_PREFIX = "__Z"


@dataclass(frozen=True)
class BasicLocalSentence:
    """Exists x_1..x_k, all satisfying an r-local chi and pairwise further than 2r."""

    k: int
    r: int
    chi: Formula

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("sentence needs k >= 1")
        if len(free_vars(self.chi)) != 1:
            raise ValueError("chi must have exactly one free variable")

    def to_formula(self) -> Formula:
        (var,) = free_vars(self.chi)
        taken = all_vars(self.chi)
        names = []
        for i in range(1, self.k + 1):
            name = f"x{i}"
            while name in taken:
                name = "_" + name
            names.append(name)
        parts = [rename_free(self.chi, {var: name}) for name in names]
        parts.extend(Not(DistLeq(a, b, 2 * self.r))
                     for a, b in itertools.combinations(names, 2))
        body = conjunction(parts)
        for name in reversed(names):
            body = Exists(name, body)
        return body


@dataclass(frozen=True)
class SentenceLeaf:
    sentence: BasicLocalSentence


@dataclass(frozen=True)
class UnaryLocalLeaf:
    var: str
    formula: Formula
    t: int

    def __post_init__(self):
        if self.var not in ("x", "y"):
            raise ValueError("unary leaf variable must be x or y")
        if not free_vars(self.formula) <= {self.var}:
            raise ValueError(f"unary leaf formula must use only {self.var}")


@dataclass(frozen=True)
class ProductLeaf:
    """Disjunction of products; each pair (f, g) contributes f(x) & g(y).

    Factor formulas are written in the single variable x.
    """

    pairs: tuple

    def __post_init__(self):
        pairs = tuple(self.pairs)
        for fx, fy in pairs:
            if not free_vars(fx) <= {"x"} or not free_vars(fy) <= {"x"}:
                raise ValueError("product factors must be formulas in x")
        object.__setattr__(self, "pairs", pairs)


@dataclass(frozen=True)
class NearLeaf:
    """A binary formula declared strongly 2t-local (false on far pairs)."""

    formula: Formula
    t: int

    def __post_init__(self):
        fv = free_vars(self.formula)
        if fv != {"x", "y"} and not isinstance(self.formula, FalseF):
            raise ValueError("near leaf must mention both x and y "
                             "(it must force dist(x,y) <= 2t)")


@dataclass(frozen=True)
class GfAnd:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class GfOr:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class GfNot:
    child: object


_LEAVES = (SentenceLeaf, UnaryLocalLeaf, ProductLeaf, NearLeaf)


@dataclass(frozen=True)
class GaifmanForm:
    """Boolean combination of local leaves with an overall locality radius t."""

    root: object
    locality_radius: int

    def sentence_leaves(self) -> tuple:
        out = []

        def walk(node):
            if isinstance(node, SentenceLeaf):
                out.append(node)
            elif isinstance(node, (GfAnd, GfOr)):
                for c in node.children:
                    walk(c)
            elif isinstance(node, GfNot):
                walk(node.child)

        walk(self.root)
        return tuple(out)

    def marker_names(self) -> tuple:
        return tuple(f"{MARKER_PREFIX}{i}"
                     for i in range(1, len(self.sentence_leaves()) + 1))


def _flatten(node, sentence_repl) -> Formula:
    if isinstance(node, GfAnd):
        return conjunction(_flatten(c, sentence_repl) for c in node.children)
    if isinstance(node, GfOr):
        return disjunction(_flatten(c, sentence_repl) for c in node.children)
    if isinstance(node, GfNot):
        return Not(_flatten(node.child, sentence_repl))
    if isinstance(node, SentenceLeaf):
        return sentence_repl(node)
    if isinstance(node, UnaryLocalLeaf):
        return node.formula
    if isinstance(node, NearLeaf):
        return node.formula
    if isinstance(node, ProductLeaf):
        return disjunction(And(fx, rename_free(fy, {"x": "y"}))
                           for fx, fy in node.pairs)
    raise TypeError(f"not a Gaifman tree node: {node!r}")


def raw_edge_formula(gf: GaifmanForm) -> Formula:
    """The edge formula the tree denotes, with sentences spelled out."""
    return _flatten(gf.root, lambda leaf: leaf.sentence.to_formula())


def marker_edge_formula(gf: GaifmanForm) -> Formula:
    """The tree with each sentence replaced by its marker atom on x.

    Markers are numbered by traversal order, matching sentence_leaves().
    """
    counter = itertools.count(1)
    return _flatten(gf.root,
                    lambda leaf: PredAtom(f"{MARKER_PREFIX}{next(counter)}", "x"))


@dataclass(frozen=True)
class FarForm:
    """Far-regime decomposition: pairs of factor indices (1-based, symmetric
    for symmetric inputs) plus the factor formulas written in x."""

    qtilde: Formula
    pairs: frozenset
    factors: tuple


def far_products(gf: GaifmanForm) -> FarForm:
    """Behavior of the marker tree on pairs with dist(x,y) > 2t.

    Near leaves become false (they cannot hold on far pairs); product leaves
    survive verbatim; the Boolean combination is distributed into a
    disjunction of products factor_i(x) & factor_j(y).
    """
    marker_count = [0]

    TRUE_CONJ = (frozenset(), frozenset())

    def leaf_conjuncts(node, neg):
        if isinstance(node, SentenceLeaf):
            marker_count[0] += 1
            atom = PredAtom(f"{MARKER_PREFIX}{marker_count[0]}", "x")
            return [(frozenset([Not(atom) if neg else atom]), frozenset())]
        if isinstance(node, UnaryLocalLeaf):
            f = Not(node.formula) if neg else node.formula
            if node.var == "x":
                return [(frozenset([f]), frozenset())]
            return [(frozenset(), frozenset([f]))]
        if isinstance(node, NearLeaf):
            return [TRUE_CONJ] if neg else []
        if isinstance(node, ProductLeaf):
            ys = [(fx, rename_free(fy, {"x": "y"})) for fx, fy in node.pairs]
            if not neg:
                return [(frozenset([fx]), frozenset([fy])) for fx, fy in ys]
            # de Morgan: AND over pairs of (!fx | !fy), distributed
            out = [TRUE_CONJ]
            for fx, fy in ys:
                branches = [(frozenset([Not(fx)]), frozenset()),
                            (frozenset(), frozenset([Not(fy)]))]
                out = [(cx | bx, cy | by)
                       for cx, cy in out for bx, by in branches]
            return _dedup(out)
        raise TypeError(f"not a Gaifman tree node: {node!r}")

    def dnf(node, neg):
        if isinstance(node, GfNot):
            return dnf(node.child, not neg)
        is_and = isinstance(node, GfAnd)
        is_or = isinstance(node, GfOr)
        if (is_and and not neg) or (is_or and neg):
            out = [TRUE_CONJ]
            children = node.children
            for c in children:
                branches = dnf(c, neg)
                out = [(cx | bx, cy | by)
                       for cx, cy in out for bx, by in branches]
                if not out:
                    return []
            return _dedup(out)
        if is_and or is_or:
            out = []
            for c in node.children:
                out.extend(dnf(c, neg))
            return _dedup(out)
        return leaf_conjuncts(node, neg)

    conjuncts = dnf(gf.root, False)

    factors: list = []
    index: dict = {}

    def factor_id(lits) -> int:
        f = conjunction(sorted(lits, key=to_text)) if lits else TRUE
        if f not in index:
            factors.append(f)
            index[f] = len(factors)
        return index[f]

    pairs = []
    for xlits, ylits in conjuncts:
        ix = factor_id(xlits)
        iy = factor_id(frozenset(rename_free(f, {"y": "x"}) for f in ylits))
        if (ix, iy) not in pairs:
            pairs.append((ix, iy))
    qtilde = disjunction(
        And(factors[i - 1], rename_free(factors[j - 1], {"x": "y"}))
        for i, j in sorted(pairs))
    return FarForm(qtilde, frozenset(pairs), tuple(factors))


def _dedup(conjuncts):
    seen = {}
    for c in conjuncts:
        seen.setdefault(c, None)
    return list(seen)


def immersive_edge_formula(gf: GaifmanForm) -> Formula:
    """The near-regime correction: !(marker_tree <-> far_products) & dist <= 2t."""
    far = far_products(gf)
    return And(Not(Iff(marker_edge_formula(gf), far.qtilde)),
               DistLeq("x", "y", 2 * gf.locality_radius))


def subset_name(i: int) -> str:
    return f"{SUBSET_PREFIX}{i}"


def union_name(i: int, j: int) -> str:
    return f"{SUBSET_PREFIX}{i}_{j}"


def far_pair_perturbation(pairs: frozenset, num_factors: int) -> Transduction:
    """Realize the far products as subset complementations.

    For each diagonal pair (i,i) complement Z_i; for each off-diagonal pair
    i < j complement the union Z_i|Z_j, then Z_i, then Z_j.  The factor sets
    are bound to the factor formulas by the verification valuation; the
    realization toggles exactly the far product pairs when the factor sets
    are pairwise disjoint.
    """
    for i, j in pairs:
        if (j, i) not in pairs:
            raise ValueError(f"pair set is not symmetric: ({i},{j}) lacks its mirror")
        if not (1 <= i <= num_factors and 1 <= j <= num_factors):
            raise ValueError(f"pair ({i},{j}) out of factor range")
    if not pairs:
        return Transduction(())
    names = [subset_name(i) for i in range(1, num_factors + 1)]
    offdiag = sorted((i, j) for i, j in pairs if i < j)
    names.extend(union_name(i, j) for i, j in offdiag)
    steps = [Expand(tuple(names))]
    steps.extend(SubsetComplement(subset_name(i))
                 for i, j in sorted(pairs) if i == j)
    for i, j in offdiag:
        steps.append(SubsetComplement(union_name(i, j)))
        steps.append(SubsetComplement(subset_name(i)))
        steps.append(SubsetComplement(subset_name(j)))
    return Transduction(tuple(steps))


# ---------------------------------------------------------------------------
# Whole-transduction decomposition


@dataclass(frozen=True)
class GaifmanTransduction:
    """A transduction whose edge formula is supplied as a Gaifman form.

    copy_arity 1 means no copy step.
    """

    signature: tuple
    nu: Formula
    form: GaifmanForm
    copy_arity: int = 1

    def __post_init__(self):
        object.__setattr__(self, "signature", tuple(self.signature))
        if self.copy_arity < 1:
            raise ValueError("copy arity must be >= 1")

    def to_transduction(self) -> Transduction:
        steps = []
        if self.copy_arity > 1:
            steps.append(Copy(self.copy_arity))
        if self.signature:
            steps.append(Expand(self.signature))
        steps.append(Interpret(Interpretation(self.nu, raw_edge_formula(self.form))))
        return Transduction(tuple(steps))


@dataclass(frozen=True)
class NormalFormDecomposition:
    copy_arity: int
    immersive: Transduction
    perturbation: Transduction
    locality_radius: int
    psi: Formula
    markers: tuple
    sentences: tuple
    factors: tuple
    pairs: frozenset

    def full_pipeline(self) -> Transduction:
        steps = []
        if self.copy_arity > 1:
            steps.append(Copy(self.copy_arity))
        steps.extend(self.immersive.steps)
        steps.extend(self.perturbation.steps)
        return Transduction(tuple(steps))


def decompose(gt: GaifmanTransduction) -> NormalFormDecomposition:
    gf = gt.form
    markers = gf.marker_names()
    psi = immersive_edge_formula(gf)
    far = far_products(gf)
    expand_names = gt.signature + markers
    steps = []
    if expand_names:
        steps.append(Expand(expand_names))
    steps.append(Interpret(Interpretation(gt.nu, psi)))
    immersive = Transduction(tuple(steps))
    pert = far_pair_perturbation(far.pairs, len(far.factors))
    return NormalFormDecomposition(
        copy_arity=gt.copy_arity,
        immersive=immersive,
        perturbation=pert,
        locality_radius=gf.locality_radius,
        psi=psi,
        markers=markers,
        sentences=gf.sentence_leaves(),
        factors=far.factors,
        pairs=far.pairs,
    )


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class CounterExample:
    source: ColoredGraph
    coloring: tuple
    expected: Graph
    produced: Graph


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    counterexample: Optional[CounterExample] = None
    psi_locality: Optional[LocalityReport] = None
    declaration_failures: tuple = ()
    colorings_checked: int = 0

    def __bool__(self):
        return self.ok


def check_declared_localities(gf: GaifmanForm, corpus: list) -> tuple:
    """Corpus-check every leaf's declared locality; returns failures."""
    failures = []

    def leaf_checks(node):
        if isinstance(node, SentenceLeaf):
            s = node.sentence
            rep = is_r_local_on_corpus(s.chi, s.r, corpus)
            if not rep.holds:
                failures.append(("sentence", to_text(s.chi), rep))
        elif isinstance(node, UnaryLocalLeaf):
            rep = is_r_local_on_corpus(node.formula, node.t, corpus)
            if not rep.holds:
                failures.append(("unary", to_text(node.formula), rep))
        elif isinstance(node, NearLeaf):
            if not isinstance(node.formula, FalseF):
                rep = is_strongly_r_local_on_corpus(node.formula, 2 * node.t, corpus)
                if not rep.holds:
                    failures.append(("near", to_text(node.formula), rep))
        elif isinstance(node, ProductLeaf):
            for fx, fy in node.pairs:
                for f in (fx, fy):
                    if isinstance(f, (TrueF, FalseF)):
                        continue
                    rep = is_r_local_on_corpus(f, gf.locality_radius, corpus)
                    if not rep.holds:
                        failures.append(("product", to_text(f), rep))
        elif isinstance(node, (GfAnd, GfOr)):
            for c in node.children:
                leaf_checks(c)
        elif isinstance(node, GfNot):
            leaf_checks(node.child)

    leaf_checks(gf.root)
    return tuple(failures)


def _subset_choices(names: tuple, n: int):
    subsets = [frozenset(v for v in range(n) if mask >> v & 1)
               for mask in range(2 ** n)]
    return itertools.product(subsets, repeat=len(names))


def verify_decomposition(gt: GaifmanTransduction, d: NormalFormDecomposition,
                         corpus: Iterable, budget: int,
                         blind_fallback: bool = True) -> VerificationResult:
    """Replay the construction's valuations per coloring and compare exactly.

    For every corpus graph and every signature coloring the original output
    must equal the decomposition's output under the explicit valuations
    (markers = everything or nothing by sentence truth; factor sets by factor
    satisfaction).  On mismatch, a blind witness search over the full
    decomposition pipeline is tried before reporting a counterexample.
    """
    corpus = list(corpus)
    declaration_failures = check_declared_localities(gt.form, corpus)
    psi_rep = is_strongly_r_local_on_corpus(d.psi, 2 * d.locality_radius, corpus)
    if declaration_failures or not psi_rep.holds:
        return VerificationResult(False, None, psi_rep, declaration_failures)

    total = sum(2 ** (len(gt.signature) * cg.graph.n) for cg in corpus)
    if total > budget:
        raise BudgetExceededError(total, budget)

    original = Interpretation(gt.nu, raw_edge_formula(gt.form))
    psi_interp = Interpretation(gt.nu, d.psi)
    sentence_formulas = [leaf.sentence.to_formula() for leaf in d.sentences]
    pert_names = d.perturbation.expansion_names
    checked = 0

    for base in corpus:
        for name in gt.signature + d.markers + pert_names:
            if name in base.predicates:
                raise ValueError(f"corpus graph already carries predicate {name}")
        start = base
        if d.copy_arity > 1:
            start = copy_operation(base, d.copy_arity)
        n = start.graph.n
        for combo in _subset_choices(gt.signature, n):
            checked += 1
            gplus = start
            for name, members in zip(gt.signature, combo):
                gplus = gplus.with_predicate(name, members)
            expected, _ = original.apply(gplus)

            gstar = gplus
            for name, sent in zip(d.markers, sentence_formulas):
                holds = evaluate(gplus, sent, {})
                gstar = gstar.with_predicate(name, range(n) if holds else ())
            produced_graph, kept = psi_interp.apply(gstar)

            dm = distance_matrix(gstar.graph)
            spread = any(not 0 <= dm[kept[u]][kept[v]] <= 2 * d.locality_radius
                         for u, v in produced_graph.edges)
            if spread:
                # strong locality violated on this expansion
                return VerificationResult(
                    False, CounterExample(base, combo, expected, produced_graph),
                    psi_rep, (), checked)

            if pert_names:
                sets = {}
                for i, factor in enumerate(d.factors, start=1):
                    sets[subset_name(i)] = frozenset(
                        idx for idx, v in enumerate(kept)
                        if evaluate(gstar, factor, {"x": v}))
                for i, j in sorted(d.pairs):
                    if i < j:
                        sets[union_name(i, j)] = (sets[subset_name(i)]
                                                  | sets[subset_name(j)])
                stage = ColoredGraph.bare(produced_graph)
                choices = [sets[name] for name in pert_names]
                produced = apply_with_coloring(d.perturbation, stage, choices).graph
            else:
                produced = produced_graph

            if produced != expected:
                if blind_fallback:
                    pipeline = d.full_pipeline()
                    bound = coloring_space_bound(pipeline, base.graph.n)
                    if bound > budget:
                        raise BudgetExceededError(bound, budget)
                    hit = witness_search(pipeline, base, expected, budget)
                    if hit.found:
                        continue
                return VerificationResult(
                    False, CounterExample(base, combo, expected, produced),
                    psi_rep, (), checked)
    return VerificationResult(True, None, psi_rep, (), checked)


# ---------------------------------------------------------------------------
# File format.  A Gaifman transduction file holds directive lines followed by
# one s-expression:
#   copy <k>                (optional)
#   expand <name> ...       (optional, the signature)
#   nu "<formula>"          (optional, default "true")
#   locality <t>
#   gaifman <s-expression>  (may continue over following lines)
# Leaves: (sentence <k> <r> "<chi>"), (near <t> "<formula>"),
# (unary <t> <var> "<formula>"), (product ("<f>" "<g>") ...);
# combined with (and ...), (or ...), (not ...).


def _sexpr_tokens(text: str):
    out = []
    i = 0
    while i < len(text):
        c = text[i]
        if c in "()":
            out.append(c)
            i += 1
        elif c == '"':
            j = text.index('"', i + 1)
            out.append(("str", text[i + 1:j]))
            i = j + 1
        elif c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()"#':
                j += 1
            out.append(("atom", text[i:j]))
            i = j
    return out


def _parse_sexpr(tokens: list, pos: int):
    if tokens[pos] == "(":
        items = []
        pos += 1
        while tokens[pos] != ")":
            item, pos = _parse_sexpr(tokens, pos)
            items.append(item)
        return items, pos + 1
    return tokens[pos], pos + 1


def _build_gf_node(expr):
    if not isinstance(expr, list) or not expr:
        raise ValueError(f"bad gaifman expression: {expr!r}")
    head = expr[0]
    if head == ("atom", "and"):
        return GfAnd(tuple(_build_gf_node(e) for e in expr[1:]))
    if head == ("atom", "or"):
        return GfOr(tuple(_build_gf_node(e) for e in expr[1:]))
    if head == ("atom", "not"):
        if len(expr) != 2:
            raise ValueError("not takes one argument")
        return GfNot(_build_gf_node(expr[1]))
    if head == ("atom", "sentence"):
        k, r = int(expr[1][1]), int(expr[2][1])
        return SentenceLeaf(BasicLocalSentence(k, r, parse(expr[3][1])))
    if head == ("atom", "near"):
        return NearLeaf(parse(expr[2][1]), int(expr[1][1]))
    if head == ("atom", "unary"):
        return UnaryLocalLeaf(expr[2][1], parse(expr[3][1]), int(expr[1][1]))
    if head == ("atom", "product"):
        pairs = []
        for item in expr[1:]:
            if not (isinstance(item, list) and len(item) == 2):
                raise ValueError("product pairs are (\"<f>\" \"<g>\")")
            pairs.append((parse(item[0][1]), parse(item[1][1])))
        return ProductLeaf(tuple(pairs))
    raise ValueError(f"unknown gaifman node {head!r}")


def loads_gaifman_transduction(text: str) -> GaifmanTransduction:
    copy_arity = 1
    signature: tuple = ()
    nu = TRUE
    locality = None
    sexpr_text = None
    lines = text.splitlines()
    for idx, raw in enumerate(lines):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        head = stripped.split()[0]
        if head == "gaifman":
            rest = stripped[len("gaifman"):]
            sexpr_text = "\n".join([rest] + lines[idx + 1:])
            break
        fields = shlex.split(stripped)
        if head == "copy":
            copy_arity = int(fields[1])
        elif head == "expand":
            signature = tuple(fields[1:])
        elif head == "nu":
            nu = parse(fields[1])
        elif head == "locality":
            locality = int(fields[1])
        else:
            raise ValueError(f"unknown directive {head!r}")
    if locality is None:
        raise ValueError("missing locality directive")
    if sexpr_text is None:
        raise ValueError("missing gaifman expression")
    tokens = _sexpr_tokens(sexpr_text)
    expr, pos = _parse_sexpr(tokens, 0)
    if pos != len(tokens):
        raise ValueError("trailing input after gaifman expression")
    root = _build_gf_node(expr)
    return GaifmanTransduction(signature, nu, GaifmanForm(root, locality),
                               copy_arity)


def dumps_gaifman_node(node) -> str:
    if isinstance(node, GfAnd):
        return "(and " + " ".join(dumps_gaifman_node(c) for c in node.children) + ")"
    if isinstance(node, GfOr):
        return "(or " + " ".join(dumps_gaifman_node(c) for c in node.children) + ")"
    if isinstance(node, GfNot):
        return f"(not {dumps_gaifman_node(node.child)})"
    if isinstance(node, SentenceLeaf):
        s = node.sentence
        return f'(sentence {s.k} {s.r} "{to_text(s.chi)}")'
    if isinstance(node, NearLeaf):
        return f'(near {node.t} "{to_text(node.formula)}")'
    if isinstance(node, UnaryLocalLeaf):
        return f'(unary {node.t} {node.var} "{to_text(node.formula)}")'
    if isinstance(node, ProductLeaf):
        pairs = " ".join(f'("{to_text(fx)}" "{to_text(fy)}")'
                         for fx, fy in node.pairs)
        return f"(product {pairs})"
    raise TypeError(f"not a Gaifman tree node: {node!r}")


def dumps_gaifman_transduction(gt: GaifmanTransduction) -> str:
    lines = []
    if gt.copy_arity > 1:
        lines.append(f"copy {gt.copy_arity}")
    if gt.signature:
        lines.append("expand " + " ".join(gt.signature))
    lines.append(f'nu "{to_text(gt.nu)}"')
    lines.append(f"locality {gt.form.locality_radius}")
    lines.append(f"gaifman {dumps_gaifman_node(gt.form.root)}")
    return "\n".join(lines) + "\n"
