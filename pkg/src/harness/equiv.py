"""
Equivalência estrutural de configurações e reescritas aleatórias de congruência.

As reescritas servem de oráculo para o normalizador: cada uma preserva a
congruência (comutatividade e associatividade de ``|``, extrusão de escopo,
troca de ligantes vizinhos e renomeação alfa de um ligante).
"""

import logging
import random
from dataclasses import replace
from typing import Callable, List, Optional, Tuple

from src.calculi.configuration import (
    Binder,
    Buffer,
    ConfigTree,
    Configuration,
    Leaf,
    Par,
    Restrict,
    config_key,
    flatten,
    free_names,
    rename_leaf,
    to_tree,
)
from src.errors import WorkbenchError
from src.lang.terms import Value

logger = logging.getLogger(__name__)

Path = Tuple[int, ...]


def config_equiv(c: ConfigTree, d: ConfigTree, gc: bool = False) -> bool:
    """``True`` se ``c ≡ d`` (mesma forma normal, com nomes canônicos)."""
    try:
        return config_key(c, gc=gc) == config_key(d, gc=gc)
    except WorkbenchError:
        raise
    except Exception as e:
        raise WorkbenchError(f"Erro ao comparar configurações: {e}") from e


def tree_free_names(tree: ConfigTree):
    return free_names(flatten(tree))


def rename_tree(tree: ConfigTree, old: str, new: str) -> ConfigTree:
    """Renomeia as ocorrências livres de ``old``."""
    if isinstance(tree, Configuration):
        if not tree.leaves:
            return tree
        tree = to_tree(tree)
    if isinstance(tree, Par):
        return Par(rename_tree(tree.left, old, new), rename_tree(tree.right, old, new))
    if isinstance(tree, Restrict):
        if tree.binder.name == old:
            return tree
        return Restrict(tree.binder, rename_tree(tree.body, old, new))
    return rename_leaf(tree, {old: new})


# ---------------------------------------------------------------------------
# Reescritas
# ---------------------------------------------------------------------------

def _positions(tree: ConfigTree, path: Path = ()) -> List[Tuple[Path, ConfigTree]]:
    found = [(path, tree)]
    if isinstance(tree, Par):
        found += _positions(tree.left, path + (0,))
        found += _positions(tree.right, path + (1,))
    elif isinstance(tree, Restrict):
        found += _positions(tree.body, path + (0,))
    return found


def _replace_at(tree: ConfigTree, path: Path, new: ConfigTree) -> ConfigTree:
    if not path:
        return new
    head, rest = path[0], path[1:]
    if isinstance(tree, Par):
        if head == 0:
            return Par(_replace_at(tree.left, rest, new), tree.right)
        return Par(tree.left, _replace_at(tree.right, rest, new))
    if isinstance(tree, Restrict):
        return Restrict(tree.binder, _replace_at(tree.body, rest, new))
    raise WorkbenchError(f"caminho inválido na configuração: {path}")


def _fresh(tree: ConfigTree, base: str) -> str:
    taken = set(_all_names(tree))
    index = 0
    while f"{base}'{index}" in taken:
        index += 1
    return f"{base}'{index}"


def _all_names(tree: ConfigTree) -> List[str]:
    names = list(flatten(tree).bound_names) + list(tree_free_names(tree))
    for _, node in _positions(tree):
        if isinstance(node, Restrict):
            names.append(node.binder.name)
    return names


def _commute(node: ConfigTree, tree: ConfigTree) -> Optional[ConfigTree]:
    if isinstance(node, Par):
        return Par(node.right, node.left)
    return None


def _associate(node: ConfigTree, tree: ConfigTree) -> Optional[ConfigTree]:
    if isinstance(node, Par) and isinstance(node.left, Par):
        return Par(node.left.left, Par(node.left.right, node.right))
    if isinstance(node, Par) and isinstance(node.right, Par):
        return Par(Par(node.left, node.right.left), node.right.right)
    return None


def _extrude(node: ConfigTree, tree: ConfigTree) -> Optional[ConfigTree]:
    """``(νa)C | D ≡ (νa)(C | D)`` se ``a ∉ fn(D)``, e o sentido inverso."""
    if isinstance(node, Par) and isinstance(node.left, Restrict):
        binder, body = node.left.binder, node.left.body
        if binder.name in tree_free_names(node.right):
            fresh = _fresh(tree, binder.name)
            body = rename_tree(body, binder.name, fresh)
            binder = replace(binder, name=fresh)
        return Restrict(binder, Par(body, node.right))
    if isinstance(node, Restrict) and isinstance(node.body, Par):
        if node.binder.name not in tree_free_names(node.body.right):
            return Par(Restrict(node.binder, node.body.left), node.body.right)
        if node.binder.name not in tree_free_names(node.body.left):
            return Par(node.body.left, Restrict(node.binder, node.body.right))
    return None


def _swap_binders(node: ConfigTree, tree: ConfigTree) -> Optional[ConfigTree]:
    if isinstance(node, Restrict) and isinstance(node.body, Restrict):
        outer, inner = node.binder, node.body.binder
        if outer.name == inner.name:
            return None
        return Restrict(inner, Restrict(outer, node.body.body))
    return None


def _alpha(node: ConfigTree, tree: ConfigTree) -> Optional[ConfigTree]:
    if isinstance(node, Restrict):
        fresh = _fresh(tree, node.binder.name)
        return Restrict(Binder(fresh, node.binder.type, node.binder.result),
                        rename_tree(node.body, node.binder.name, fresh))
    return None


REWRITES: Tuple[Callable[[ConfigTree, ConfigTree], Optional[ConfigTree]], ...] = (
    _commute, _associate, _extrude, _swap_binders, _alpha,
)


def random_rewrite(tree: ConfigTree, rng: random.Random) -> ConfigTree:
    """Aplica uma reescrita de congruência escolhida ao acaso (ou devolve ``tree``)."""
    if isinstance(tree, Configuration):
        tree = to_tree(tree)
    candidates = []
    for path, node in _positions(tree):
        for rewrite in REWRITES:
            result = rewrite(node, tree)
            if result is not None:
                candidates.append((path, result))
    if not candidates:
        return tree
    path, result = rng.choice(candidates)
    return _replace_at(tree, path, result)


def random_rewrites(tree: ConfigTree, count: int, seed: int = 0) -> List[ConfigTree]:
    """``count`` configurações congruentes a ``tree``, cada uma após uma cadeia de reescritas."""
    rng = random.Random(seed)
    current = to_tree(tree) if isinstance(tree, Configuration) else tree
    produced = []
    for _ in range(count):
        current = random_rewrite(current, rng)
        produced.append(current)
    return produced


def perturb_buffer(c: ConfigTree, value: Value) -> Optional[Configuration]:
    """Configuração inequivalente: acrescenta ``value`` ao primeiro buffer (se houver)."""
    flat = flatten(c)
    for index, leaf in enumerate(flat.leaves):
        if isinstance(leaf, Buffer):
            changed: Leaf = Buffer(leaf.name, leaf.values + (value,))
            return flat.replace({index: changed})
    logger.debug("nenhum buffer para perturbar")
    return None
