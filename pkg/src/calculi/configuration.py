"""
Configurações de tempo de execução compartilhadas por λ_ch e λ_act.

Uma configuração é uma composição paralela de folhas (buffers, threads e atores)
sob ligantes ν. A forma achatada ``Configuration`` guarda todos os ligantes
por fora e as folhas como um multiconjunto ordenado; as árvores ``Par`` e
``Restrict`` só aparecem na sintaxe explícita e nas reescritas de congruência.

A normalização decide a congruência estrutural:

1. achata a árvore (extrusão de escopo), renomeando ligantes que colidem;
2. opcionalmente coleta atores terminados e não referenciados (modo sync);
3. refina cores dos nomes ligados a partir das folhas com nomes apagados;
4. desempata grupos simétricos testando permutações até um limite;
5. renomeia os ligantes para ``n$i`` e ordena as folhas pela chave estrutural.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from src.config import settings
from src.lang.alpha import term_key
from src.lang.subst import names_in, rename_names
from src.lang.terms import Comp, Return, UnitValue, Value
from src.lang.types import Type, type_key

logger = logging.getLogger(__name__)

# Nome neutro usado nas chaves com nomes apagados
ERASED = "•"


class ConfigTree:
    """Classe base de nós de configuração."""

    __slots__ = ()


class Leaf(ConfigTree):
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Binder:
    """Ligante ``(νa : A)``; ``result`` só existe para atores no modo sync."""

    name: str
    type: Type
    result: Optional[Type] = None


@dataclass(frozen=True, slots=True)
class Buffer(Leaf):
    name: str
    values: Tuple[Value, ...] = ()


@dataclass(frozen=True, slots=True)
class Thread(Leaf):
    term: Comp


@dataclass(frozen=True, slots=True)
class Actor(Leaf):
    name: str
    term: Comp
    mailbox: Tuple[Value, ...] = ()


@dataclass(frozen=True, slots=True)
class Par(ConfigTree):
    left: ConfigTree
    right: ConfigTree


@dataclass(frozen=True, slots=True)
class Restrict(ConfigTree):
    binder: Binder
    body: ConfigTree


@dataclass(frozen=True, slots=True)
class Configuration(ConfigTree):
    """Forma achatada ``(νa1)…(νan)(L1 ∥ … ∥ Lm)``."""

    binders: Tuple[Binder, ...] = ()
    leaves: Tuple[Leaf, ...] = ()

    @property
    def bound_names(self) -> Tuple[str, ...]:
        return tuple(b.name for b in self.binders)

    def binder_for(self, name: str) -> Optional[Binder]:
        for binder in self.binders:
            if binder.name == name:
                return binder
        return None

    def buffer(self, name: str) -> Optional[Tuple[int, Buffer]]:
        for index, leaf in enumerate(self.leaves):
            if isinstance(leaf, Buffer) and leaf.name == name:
                return index, leaf
        return None

    def actor(self, name: str) -> Optional[Tuple[int, Actor]]:
        for index, leaf in enumerate(self.leaves):
            if isinstance(leaf, Actor) and leaf.name == name:
                return index, leaf
        return None

    def replace(self, updates: Mapping[int, Leaf], extra: Sequence[Leaf] = (),
                binders: Sequence[Binder] = ()) -> "Configuration":
        """Nova configuração com folhas substituídas, folhas e ligantes acrescentados."""
        leaves = tuple(updates.get(i, leaf) for i, leaf in enumerate(self.leaves))
        return Configuration(self.binders + tuple(binders), leaves + tuple(extra))


def leaf_terms(leaf: Leaf) -> Tuple:
    """Termos (computações e valores) contidos numa folha."""
    if isinstance(leaf, Buffer):
        return leaf.values
    if isinstance(leaf, Thread):
        return (leaf.term,)
    if isinstance(leaf, Actor):
        return (leaf.term,) + leaf.mailbox
    raise TypeError(f"folha desconhecida: {leaf!r}")


def leaf_name(leaf: Leaf) -> Optional[str]:
    return getattr(leaf, "name", None)


def leaf_names(leaf: Leaf) -> Set[str]:
    """Nomes de tempo de execução que ocorrem numa folha (incluindo o próprio)."""
    found: Set[str] = set()
    own = leaf_name(leaf)
    if own is not None:
        found.add(own)
    for term in leaf_terms(leaf):
        found |= names_in(term)
    return found


def config_names(c: Configuration) -> Set[str]:
    found: Set[str] = set(c.bound_names)
    for leaf in c.leaves:
        found |= leaf_names(leaf)
    return found


def free_names(c: Configuration) -> FrozenSet[str]:
    return frozenset(config_names(c) - set(c.bound_names))


def fresh_runtime_name(taken: Iterable[str]) -> str:
    """Menor ``n$k`` ainda não usado."""
    used = set(taken)
    index = 0
    while f"n${index}" in used:
        index += 1
    return f"n${index}"


def rename_leaf(leaf: Leaf, mapping: Mapping[str, str]) -> Leaf:
    if not mapping:
        return leaf
    if isinstance(leaf, Buffer):
        return Buffer(mapping.get(leaf.name, leaf.name),
                      tuple(rename_names(v, mapping) for v in leaf.values))
    if isinstance(leaf, Thread):
        return Thread(rename_names(leaf.term, mapping))
    if isinstance(leaf, Actor):
        return Actor(mapping.get(leaf.name, leaf.name), rename_names(leaf.term, mapping),
                     tuple(rename_names(v, mapping) for v in leaf.mailbox))
    raise TypeError(f"folha desconhecida: {leaf!r}")


def rename_config(c: Configuration, mapping: Mapping[str, str]) -> Configuration:
    binders = tuple(Binder(mapping.get(b.name, b.name), b.type, b.result) for b in c.binders)
    return Configuration(binders, tuple(rename_leaf(leaf, mapping) for leaf in c.leaves))


def par_all(parts: Sequence[ConfigTree]) -> ConfigTree:
    """Composição paralela associada à direita; vazia vira configuração vazia."""
    if not parts:
        return Configuration()
    tree = parts[-1]
    for part in reversed(parts[:-1]):
        tree = Par(part, tree)
    return tree


def to_tree(c: Configuration) -> ConfigTree:
    tree = par_all(list(c.leaves))
    for binder in reversed(c.binders):
        tree = Restrict(binder, tree)
    return tree


# ---------------------------------------------------------------------------
# Achatamento (extrusão de escopo)
# ---------------------------------------------------------------------------

def flatten(tree: ConfigTree) -> Configuration:
    """Leva todos os ligantes ν para fora, renomeando-os para evitar colisões."""
    if isinstance(tree, Configuration) and len(set(tree.bound_names)) == len(tree.binders):
        return tree
    binders: List[Binder] = []
    leaves: List[Leaf] = []
    taken: Set[str] = set()
    _collect_names(tree, taken)
    used_binders: Set[str] = set(_tree_free_names(tree))
    _flatten(tree, {}, binders, leaves, taken, used_binders)
    return Configuration(tuple(binders), tuple(leaves))


def _tree_free_names(tree: ConfigTree) -> Set[str]:
    if isinstance(tree, Configuration):
        return set(free_names(tree))
    if isinstance(tree, Leaf):
        return leaf_names(tree)
    if isinstance(tree, Par):
        return _tree_free_names(tree.left) | _tree_free_names(tree.right)
    if isinstance(tree, Restrict):
        return _tree_free_names(tree.body) - {tree.binder.name}
    return set()


def _collect_names(tree: ConfigTree, taken: Set[str]) -> None:
    if isinstance(tree, Configuration):
        taken.update(config_names(tree))
    elif isinstance(tree, Leaf):
        taken.update(leaf_names(tree))
    elif isinstance(tree, Par):
        _collect_names(tree.left, taken)
        _collect_names(tree.right, taken)
    elif isinstance(tree, Restrict):
        taken.add(tree.binder.name)
        _collect_names(tree.body, taken)


def _flatten(tree: ConfigTree, mapping: Dict[str, str], binders: List[Binder],
             leaves: List[Leaf], taken: Set[str], used: Set[str]) -> None:
    if isinstance(tree, Configuration):
        _flatten(to_tree(tree), mapping, binders, leaves, taken, used)
    elif isinstance(tree, Leaf):
        leaves.append(rename_leaf(tree, mapping))
    elif isinstance(tree, Par):
        _flatten(tree.left, mapping, binders, leaves, taken, used)
        _flatten(tree.right, mapping, binders, leaves, taken, used)
    elif isinstance(tree, Restrict):
        name = tree.binder.name
        inner = dict(mapping)
        if name in used:
            fresh = fresh_runtime_name(taken)
            taken.add(fresh)
            inner[name] = fresh
            name = fresh
        else:
            inner.pop(name, None)
        used.add(name)
        binders.append(Binder(name, tree.binder.type, tree.binder.result))
        _flatten(tree.body, inner, binders, leaves, taken, used)
    else:
        raise TypeError(f"nó de configuração desconhecido: {tree!r}")


# ---------------------------------------------------------------------------
# Coleta de lixo (modo sync)
# ---------------------------------------------------------------------------

def collect_finished(c: Configuration) -> Configuration:
    """Remove ``(νa)⟨a, return V, V⃗⟩`` quando ``a`` não ocorre em nenhuma outra folha."""
    changed = True
    while changed:
        changed = False
        for index, leaf in enumerate(c.leaves):
            if not (isinstance(leaf, Actor) and isinstance(leaf.term, Return)):
                continue
            if leaf.name not in c.bound_names:
                continue
            elsewhere = any(leaf.name in leaf_names(other)
                            for j, other in enumerate(c.leaves) if j != index)
            own_refs = names_in(leaf.term.value)
            for value in leaf.mailbox:
                own_refs |= names_in(value)
            if elsewhere or leaf.name in own_refs:
                continue
            binders = tuple(b for b in c.binders if b.name != leaf.name)
            leaves = c.leaves[:index] + c.leaves[index + 1:]
            c = Configuration(binders, leaves)
            changed = True
            break
    return c


# ---------------------------------------------------------------------------
# Normalização
# ---------------------------------------------------------------------------

_KIND_RANK = {"Thread": 0, "Actor": 1, "Buffer": 2}


def leaf_key(leaf: Leaf) -> Tuple:
    """Chave estrutural determinística de uma folha (invariante por α nos termos)."""
    kind = type(leaf).__name__
    if isinstance(leaf, Buffer):
        body = (leaf.name, tuple(term_key(v) for v in leaf.values))
    elif isinstance(leaf, Thread):
        body = ("", (term_key(leaf.term),))
    else:
        body = (leaf.name, (term_key(leaf.term),) + tuple(term_key(v) for v in leaf.mailbox))
    return (_KIND_RANK[kind], kind) + body


def _binder_key(binder: Binder) -> Tuple[str, str]:
    result = type_key(binder.result) if binder.result is not None else ""
    return type_key(binder.type), result


def _refine_colours(c: Configuration) -> Dict[str, int]:
    """Cores estáveis dos nomes ligados, independentes dos nomes originais."""
    bound = list(c.bound_names)
    colour: Dict[str, Tuple] = {b.name: _binder_key(b) for b in c.binders}
    for _ in range(len(bound) + 1):
        palette = {key: f"#{i}" for i, key in enumerate(sorted(set(colour.values())))}
        named = {name: palette[colour[name]] for name in bound}
        refined: Dict[str, Tuple] = {}
        for name in bound:
            occurrences = []
            for leaf in c.leaves:
                if name not in leaf_names(leaf):
                    continue
                mapping = dict(named)
                mapping[name] = "★"
                occurrences.append(leaf_key(rename_leaf(leaf, mapping)))
            refined[name] = (colour[name], tuple(sorted(occurrences)))
        if len(set(refined.values())) == len(set(colour.values())):
            colour = refined
            break
        colour = refined
    ordered = sorted(set(colour.values()))
    return {name: ordered.index(colour[name]) for name in bound}


def _assignments(groups: List[List[str]], cap: int) -> Iterable[List[str]]:
    """Ordens candidatas dos nomes: produto das permutações de cada grupo, até ``cap``."""
    produced = 0
    for combo in itertools.product(*(itertools.permutations(g) for g in groups)):
        yield [name for group in combo for name in group]
        produced += 1
        if produced >= cap:
            logger.debug("limite de permutações atingido na normalização (%d)", cap)
            return


def _canonical_leaves(c: Configuration, order: Sequence[str],
                      targets: Sequence[str]) -> Tuple[Tuple, Dict[str, str]]:
    mapping = dict(zip(order, targets))
    keys = tuple(sorted(leaf_key(rename_leaf(leaf, mapping)) for leaf in c.leaves))
    return keys, mapping


def normalize_config(tree: ConfigTree, gc: bool = False,
                     permutation_cap: Optional[int] = None) -> Configuration:
    """Forma normal de ``tree`` módulo congruência estrutural.

    Args:
        tree: Configuração (achatada ou em árvore).
        gc: Aplica a equivalência de coleta de atores terminados (modo sync).
        permutation_cap: Permutações testadas para desempatar nomes simétricos.

    Returns:
        Configuration: ligantes canônicos ``n$i`` e folhas em ordem determinística.
    """
    cap = settings.CANON_PERMUTATION_CAP if permutation_cap is None else permutation_cap
    c = flatten(tree)
    if gc:
        c = collect_finished(c)
    if not c.binders:
        return Configuration((), tuple(sorted(c.leaves, key=leaf_key)))

    # Nomes canônicos evitam os nomes livres
    targets: List[str] = []
    avoid = set(free_names(c))
    while len(targets) < len(c.binders):
        target = fresh_runtime_name(avoid)
        avoid.add(target)
        targets.append(target)

    colours = _refine_colours(c)
    by_colour: Dict[int, List[str]] = {}
    for name in c.bound_names:
        by_colour.setdefault(colours[name], []).append(name)
    groups = [sorted(by_colour[k]) for k in sorted(by_colour)]

    best: Optional[Tuple[Tuple, Dict[str, str]]] = None
    for order in _assignments(groups, cap):
        candidate = _canonical_leaves(c, order, targets)
        if best is None or candidate[0] < best[0]:
            best = candidate
    assert best is not None
    mapping = best[1]
    renamed = rename_config(c, mapping)
    leaves = sorted(renamed.leaves, key=leaf_key)
    binders = sorted(renamed.binders, key=lambda b: targets.index(b.name))
    return Configuration(tuple(binders), tuple(leaves))


def normal_key(n: Configuration) -> Tuple:
    """Chave de uma configuração que já está em forma normal."""
    return (tuple(leaf_key(leaf) for leaf in n.leaves),
            tuple((b.name,) + _binder_key(b) for b in n.binders))


def config_key(c: ConfigTree, gc: bool = False) -> Tuple:
    """Chave hashable da forma normal; configurações congruentes têm a mesma chave."""
    return normal_key(normalize_config(c, gc=gc))


def final_values(c: ConfigTree) -> List[Value]:
    """Resultados não triviais de threads e atores totalmente reduzidos."""
    flat = flatten(c)
    found: List[Value] = []
    for leaf in flat.leaves:
        term = getattr(leaf, "term", None)
        if isinstance(term, Return) and not isinstance(term.value, UnitValue):
            found.append(term.value)
    return sorted(found, key=term_key)


def final_value_keys(c: ConfigTree) -> Tuple[str, ...]:
    """Chaves comparáveis dos resultados de ``final_values`` (ignoram nomes)."""
    keys = []
    for value in final_values(c):
        erased = rename_names(value, {n: ERASED for n in names_in(value)})
        keys.append(term_key(erased))
    return tuple(sorted(keys))
