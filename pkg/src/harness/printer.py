"""
Impressão de termos, configurações e programas na sintaxe de superfície.

A saída é aceita de volta pelo analisador: reler um termo impresso produz um
termo alfa-equivalente ao original. Listas, booleanos, ``let`` com valor,
sequências e ``case`` de listas são reapresentados com o açúcar sintático.
"""

import json
from typing import List

from src.calculi.configuration import Actor, Buffer, ConfigTree, Configuration, Par, Restrict, Thread
from src.errors import WorkbenchError
from src.harness.program import Program
from src.lang.builders import list_items
from src.lang.subst import free_vars
from src.lang.terms import (
    App,
    CaseSum,
    CaseVariant,
    Choose,
    Comp,
    ErrorValue,
    Fork,
    Give,
    Inl,
    Inr,
    IntLit,
    Lam,
    Let,
    LetPair,
    Name,
    NewCh,
    Pair,
    Prim,
    Rec,
    Receive,
    ReceivePattern,
    Return,
    Roll,
    SelectiveReceive,
    SelfRef,
    Send,
    Spawn,
    StrLit,
    Take,
    Term,
    UnitValue,
    Unroll,
    Value,
    VariantValue,
    Var,
    Wait,
    bool_of,
)
from src.lang.types import BOOL, FunType, MuType, Type, list_element, render_type

# níveis de valor
_CONS, _TAGGED, _ATOM = 0, 1, 2
# níveis de computação
_COMP, _SIMPLE = 0, 1


def _paren(text: str, wrap: bool) -> str:
    return f"({text})" if wrap else text


class _Printer:
    def __init__(self, annotations: bool = True):
        self.annotations = annotations

    # -- valores -------------------------------------------------------------

    def ann(self, text: str, t: Type) -> str:
        if self.annotations and t is not None:
            return f"({text} : {render_type(t)})"
        return text

    def value(self, v: Value, level: int = _CONS) -> str:
        if isinstance(v, Var):
            return v.name
        if isinstance(v, Name):
            return v.ident
        if isinstance(v, IntLit):
            return str(v.value)
        if isinstance(v, StrLit):
            return json.dumps(v.value, ensure_ascii=False)
        if isinstance(v, UnitValue):
            return "()"
        if isinstance(v, ErrorValue):
            return "error"
        if isinstance(v, Pair):
            return f"({self.value(v.left)}, {self.value(v.right)})"
        if isinstance(v, (Lam, Rec)):
            return f"({self.function(v)})"
        if isinstance(v, (Inl, Inr)):
            flag = bool_of(v)
            if flag is not None and (v.ann is None or v.ann == BOOL):
                return "true" if flag else "false"
            keyword = "inl" if isinstance(v, Inl) else "inr"
            text = f"{keyword} {self.value(v.value, _ATOM)}"
            if self.annotations and v.ann is not None:
                return self.ann(text, v.ann)
            return _paren(text, level > _TAGGED)
        if isinstance(v, VariantValue):
            return self.ann(f"<{v.label} = {self.value(v.value)}>", v.ann)
        if isinstance(v, Roll):
            return self.roll(v, level)
        raise WorkbenchError(f"valor sem forma impressa: {type(v).__name__}")

    def roll(self, v: Roll, level: int) -> str:
        element = list_element(v.ann) if v.ann is not None else None
        if v.ann is None or element is not None:
            items = list_items(v)
            if items is not None:
                text = "[]" if not items else "[" + ", ".join(self.value(i) for i in items) + "]"
                return self.ann(text, v.ann)
            inner = v.value
            if isinstance(inner, Inr) and isinstance(inner.value, Pair):
                # lista aberta: a cauda não é literal
                text = f"{self.value(inner.value.left, _TAGGED)} :: {self.value(inner.value.right)}"
                if self.annotations and v.ann is not None:
                    return self.ann(text, v.ann)
                return _paren(text, level > _CONS)
        text = f"roll {self.value(v.value, _ATOM)}"
        if self.annotations and v.ann is not None:
            return self.ann(text, v.ann)
        return _paren(text, level > _TAGGED)

    def function(self, v: Term) -> str:
        arrow = "->" if v.eff is None else f"-[{_effect(v.eff)}]->"
        if isinstance(v, Lam):
            param = v.var if v.var_type is None else f"{v.var}: {render_type(v.var_type)}"
            return f"fun({param}) {arrow} {self.comp(v.body)}"
        ret = render_type(v.ret_type)
        if isinstance(v.ret_type, (FunType, MuType)):
            ret = f"({ret})"
        return f"rec {v.fn}({v.var}: {render_type(v.var_type)}): {ret} {arrow} {self.comp(v.body)}"

    # -- computações ---------------------------------------------------------

    def comp(self, m: Comp, level: int = _COMP) -> str:
        simple = self.simple(m)
        if simple is not None:
            return simple
        return _paren(self.compound(m), level > _COMP)

    def compound(self, m: Comp) -> str:
        if isinstance(m, Let):
            if m.var.startswith("_") and m.var not in free_vars(m.body):
                return f"{self.comp(m.bound, _SIMPLE)}; {self.comp(m.body)}"
            listed = self.case_list(m)
            if listed is not None:
                return listed
            return f"let {m.var} <= {self.comp(m.bound, _SIMPLE)} in {self.comp(m.body)}"
        if isinstance(m, App) and isinstance(m.fn, Lam) and m.fn.eff is None:
            lam = m.fn
            typed = "" if lam.var_type is None else f": {render_type(lam.var_type)}"
            return f"let {lam.var}{typed} = {self.value(m.arg)} in {self.comp(lam.body)}"
        if isinstance(m, LetPair):
            return f"let ({m.left_var}, {m.right_var}) = {self.value(m.value)} in {self.comp(m.body)}"
        if isinstance(m, CaseSum) and _is_if(m):
            return (f"if {self.value(m.value)} then {self.comp(m.left, _SIMPLE)} "
                    f"else {self.comp(m.right)}")
        raise WorkbenchError(f"computação sem forma impressa: {type(m).__name__}")

    def case_list(self, m: Let):
        """``case v { [] -> M | h :: t -> N }`` se ``m`` for a expansão de um case de lista."""
        if not isinstance(m.bound, Unroll) or not isinstance(m.body, CaseSum):
            return None
        case = m.body
        cons = case.right
        if (case.value != Var(m.var) or not isinstance(cons, LetPair) or cons.value != Var(case.right_var)
                or m.var in free_vars(case.left) | free_vars(cons.body)
                or case.left_var in free_vars(case.left)
                or case.right_var in free_vars(cons.body)):
            return None
        return (f"case {self.value(m.bound.value)} {{ [] -> {self.comp(case.left)} | "
                f"{cons.left_var} :: {cons.right_var} -> {self.comp(cons.body)} }}")

    def simple(self, m: Comp):
        a = lambda v: self.value(v, _ATOM)  # noqa: E731
        if isinstance(m, Return):
            return f"return {self.value(m.value)}"
        if isinstance(m, App) and not (isinstance(m.fn, Lam) and m.fn.eff is None):
            return f"{a(m.fn)} {a(m.arg)}"
        if isinstance(m, CaseSum) and not _is_if(m):
            return (f"case {self.value(m.value)} {{ inl {m.left_var} -> {self.comp(m.left)} | "
                    f"inr {m.right_var} -> {self.comp(m.right)} }}")
        if isinstance(m, CaseVariant):
            arms = " | ".join(f"<{arm.label} = {arm.var}> -> {self.comp(arm.body)}" for arm in m.arms)
            return f"case {self.value(m.value)} {{ {arms} }}"
        if isinstance(m, Unroll):
            return f"unroll {a(m.value)}"
        if isinstance(m, Prim):
            return " ".join([m.op] + [a(arg) for arg in m.args])
        if isinstance(m, Give):
            return f"give {a(m.value)} {a(m.channel)}"
        if isinstance(m, Take):
            return f"take {a(m.channel)}"
        if isinstance(m, Fork):
            return f"fork ({self.comp(m.body)})"
        if isinstance(m, NewCh):
            return f"newCh[{render_type(m.carried)}]"
        if isinstance(m, Choose):
            return f"choose {a(m.left)} {a(m.right)}"
        if isinstance(m, Spawn):
            types = render_type(m.mailbox)
            if m.result is not None:
                types += f", {render_type(m.result)}"
            return f"spawn[{types}] ({self.comp(m.body)})"
        if isinstance(m, Send):
            return f"send {a(m.value)} {a(m.target)}"
        if isinstance(m, Receive):
            return "receive"
        if isinstance(m, SelectiveReceive):
            return "receive { " + ", ".join(self.pattern(p) for p in m.patterns) + " }"
        if isinstance(m, SelfRef):
            return "self"
        if isinstance(m, Wait):
            return f"wait {a(m.target)}"
        return None

    def pattern(self, p: ReceivePattern) -> str:
        guard = ""
        if not (isinstance(p.guard, Return) and bool_of(p.guard.value) is True):
            guard = f" when {self.comp(p.guard)}"
        return f"<{p.label} = {p.var}>{guard} -> {self.comp(p.body)}"

    # -- configurações -------------------------------------------------------

    def values(self, items) -> str:
        return "[" + ", ".join(self.value(v) for v in items) + "]" if items else "[]"

    def leaf(self, leaf) -> str:
        if isinstance(leaf, Thread):
            return f"thread ({self.comp(leaf.term)})"
        if isinstance(leaf, Buffer):
            return f"buffer {leaf.name} {self.values(leaf.values)}"
        if isinstance(leaf, Actor):
            return f"actor {leaf.name} ({self.comp(leaf.term)}) {self.values(leaf.mailbox)}"
        raise WorkbenchError(f"folha desconhecida: {leaf!r}")

    def config(self, tree: ConfigTree, atom: bool = False) -> str:
        if isinstance(tree, Configuration):
            if not tree.leaves:
                raise WorkbenchError("configuração vazia não tem forma impressa")
            body = " | ".join(self.leaf(leaf) for leaf in tree.leaves)
            if tree.binders:
                prefix = "".join(f"nu ({_binder(b)}) " for b in tree.binders)
                body = body if len(tree.leaves) == 1 else f"({body})"
                return prefix + body
            return _paren(body, atom and len(tree.leaves) > 1)
        if isinstance(tree, Par):
            return _paren(f"{self.config(tree.left)} | {self.config(tree.right, True)}", atom)
        if isinstance(tree, Restrict):
            return f"nu ({_binder(tree.binder)}) {self.config(tree.body, True)}"
        return self.leaf(tree)


def _binder(b) -> str:
    text = f"{b.name}: {render_type(b.type)}"
    if b.result is not None:
        text += f", {render_type(b.result)}"
    return text


def _effect(eff) -> str:
    if eff.result is None:
        return render_type(eff.mailbox)
    return f"{render_type(eff.mailbox)}, {render_type(eff.result)}"


def _is_if(m: CaseSum) -> bool:
    return (m.left_var == m.right_var and m.left_var.startswith("_")
            and m.left_var not in free_vars(m.left) and m.right_var not in free_vars(m.right))


def render_value(v: Value, annotations: bool = True) -> str:
    return _Printer(annotations).value(v)


def render_comp(m: Comp, annotations: bool = True) -> str:
    """Imprime uma computação.

    Args:
        m: Computação do núcleo.
        annotations: Se ``True``, imprime as anotações de injeções e ``roll``
            como ``(V : T)``.
    """
    return _Printer(annotations).comp(m)


def render_term(node: Term, annotations: bool = True) -> str:
    if isinstance(node, Value):
        return render_value(node, annotations)
    return render_comp(node, annotations)


def render_config(tree: ConfigTree, annotations: bool = True) -> str:
    return _Printer(annotations).config(tree)


def render_program(program: Program, annotations: bool = True) -> str:
    """Imprime um programa completo, com declarações e corpo."""
    printer = _Printer(annotations)
    lines: List[str] = []
    if program.calculus is not None:
        lines.append(f"calculus {program.calculus.value}")
    if program.extensions:
        lines.append("extensions " + ", ".join(sorted(e.value for e in program.extensions)))
    if program.mailbox is not None:
        lines.append(f"mailbox {render_type(program.mailbox)}")
    if program.result is not None:
        lines.append(f"result {render_type(program.result)}")
    for name, t in program.aliases:
        lines.append(f"type {name} = {render_type(t)}")
    for name, value in program.definitions:
        lines.append(f"def {name} = {printer.value(value)}")
    if program.config is not None:
        lines.append(f"config {printer.config(program.config)}")
    else:
        lines.append(f"main {printer.comp(program.main)}")
    return "\n".join(lines) + "\n"
