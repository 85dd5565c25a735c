"""Pretty-printer producing text that parses back to an equal tree."""

from __future__ import annotations

from . import ast

_PREC = {"+": 1, "-": 1, "*": 2, "^": 4}


def expr(node, prec: int = 0) -> str:
    if isinstance(node, ast.Num):
        return str(node.value)
    if isinstance(node, ast.Str):
        return f'"{node.value}"'
    if isinstance(node, ast.Name):
        return node.ident
    if isinstance(node, ast.Neg):
        s = "-" + expr(node.operand, 3)
        return f"({s})" if prec > 3 else s
    if isinstance(node, ast.BinOp):
        p = _PREC[node.op]
        if node.op == "^":
            s = f"{expr(node.left, 5)}^{expr(node.right)}"
        else:
            # left associative: the right operand needs a strictly higher level
            s = f"{expr(node.left, p)} {node.op} {expr(node.right, p + 1)}"
            if node.op == "*":
                s = f"{expr(node.left, p)}*{expr(node.right, p + 1)}"
        return f"({s})" if p < prec else s
    if isinstance(node, ast.Tuple):
        return "(" + ", ".join(expr(x) for x in node.items) + ")"
    if isinstance(node, ast.ListLit):
        return "[" + ", ".join(expr(x) for x in node.items) + "]"
    if isinstance(node, ast.Call):
        parts = [expr(x) for x in node.args] + [f"{k}={expr(v)}" for k, v in node.kwargs]
        return f"{node.func}(" + ", ".join(parts) + ")"
    if isinstance(node, ast.Coker):
        rows = ", ".join("[" + ", ".join(expr(x) for x in r) + "]" for r in node.rows)
        s = f"coker [{rows}]"
        if node.twists is not None:
            s += " twists [" + ", ".join(str(t) for t in node.twists) + "]"
        return s
    raise TypeError(f"cannot print {type(node).__name__}")


def statement(st) -> str:
    if isinstance(st, ast.RingDecl):
        s = f"ring {st.name} = GF({st.prime})[{', '.join(st.variables)}]"
        if st.relations:
            s += "/(" + ", ".join(expr(r) for r in st.relations) + ")"
        return s + ";"
    if isinstance(st, ast.Binding):
        return f"{st.kind} {st.name} = {expr(st.value)};"
    if isinstance(st, ast.Command):
        return expr(st.call) + ";"
    raise TypeError(f"cannot print {type(st).__name__}")


def render_session(s: ast.Session) -> str:
    return "".join(statement(st) + "\n" for st in s.statements)
