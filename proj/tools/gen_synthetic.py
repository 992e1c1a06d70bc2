#!/usr/bin/env python3
"""Writes corpus/synthetic.ce and corpus/residual.ce.

Each item is described by its parameters (with the polarity they should
get in the term's type) and its coercion edges. The term is built so that
every parameter occurs with that polarity:

  negative type a     argument  x_a : a
  positive type a     argument  k_a : a -> unit ! {}
  negative dirt d     argument  kd_d : unit ->^d unit
  positive dirt e     argument  g_e : (unit ->^e unit) -> unit ! {}
  result dirt         dirt of the innermost body

The body calls each k, kd and g it can feed by following coercion paths,
so most coercion parameters are used by the term. Raw items are copied
verbatim.
"""
import sys
from collections import deque


def bfs(edges, src, accept):
    """Shortest edge path from src to a node accepted by accept(node)."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        n = queue.popleft()
        if accept(n):
            path = []
            while prev[n] is not None:
                e, n = prev[n]
                path.append(e)
            return list(reversed(path))
        for e in edges:
            if e["lhs"] == n and e["rhs"] not in prev:
                prev[e["rhs"]] = (e, n)
                queue.append(e["rhs"])
    return None


def ops_list(ops):
    return "(" + " ".join(ops) + ")"


def dirt_sx(ops, tail):
    return "(dirt " + ops_list(ops) + (" " + tail if tail else "") + ")"


class Item:
    def __init__(self, name, skels=("s",), types=(), tyco=(), dirts=(), dco=(), result=None, ops=(), note=""):
        self.name, self.skels, self.note = name, list(skels), note
        # types: (name, polarity, skeleton param); polarity in - + +- 0
        self.types = [t if len(t) == 3 else (t[0], t[1], self.skels[0]) for t in types]
        self.tyco = [{"name": n, "lhs": a, "rhs": b} for n, a, b in tyco]
        self.dirts = list(dirts)  # (name, polarity)
        # dco: (name, lhs_ops, lhs_tail, rhs_ops, rhs_tail)
        self.dco = [{"name": d[0], "lops": d[1], "lhs": d[2], "ops": d[3], "rhs": d[4]} for d in dco]
        self.result = result  # (ops, tail) or None
        self.ops = list(ops)

    def skel_of(self, a):
        return next(t[2] for t in self.types if t[0] == a)

    def final(self):
        return self.result if self.result else ([], None)

    def empty_to(self, ops, tail):
        c = "(dempty " + tail + ")" if tail else "(drefl-empty)"
        for op in ops:
            c = "(dunion-right " + op + " " + c + ")"
        return c

    def dirt_path(self, src, ops, tail):
        """Coercion src <= ops U tail along dirt edges, or None."""
        canon = [e for e in self.dco if not e["lops"] and e["lhs"]]
        path = [] if src == tail else bfs(canon, src, lambda n: n == tail)
        if path is None:
            return None
        acc, have = None, []
        for e in path:
            step = "(dparam " + e["name"] + ")"
            if have:
                step = "(dunion-both " + ops_list(have) + " " + step + ")"
            acc = step if acc is None else "(dcomp " + step + " " + acc + ")"
            have = sorted(set(have) | set(e["ops"]))
        if not set(have) <= set(ops):
            return None
        if acc is None:
            acc = "(drefl " + src + ")"
        for op in ops:
            if op not in have:
                acc = "(dunion-right " + op + " " + acc + ")"
        return acc

    def type_path(self, src, dst):
        if src == dst:
            return "(vrefl " + src + ")"
        path = bfs(self.tyco, src, lambda n: n == dst)
        if path is None:
            return None
        acc = None
        for e in path:
            step = "(vparam " + e["name"] + ")"
            acc = step if acc is None else "(vcomp " + step + " " + acc + ")"
        return acc

    def context(self):
        out = ["  (context"]
        for s in self.skels:
            out.append("    (skel " + s + ")")
        for d, _ in self.dirts:
            out.append("    (dirt " + d + ")")
        for a, _, s in self.types:
            out.append("    (typaram " + a + " (param " + s + "))")
        for e in self.tyco:
            out.append("    (tyco " + e["name"] + " (param " + e["lhs"] + ") (param " + e["rhs"] + "))")
        for e in self.dco:
            out.append("    (dco " + e["name"] + " " + dirt_sx(e["lops"], e["lhs"]) + " " + dirt_sx(e["ops"], e["rhs"]) + ")")
        out[-1] += ")"
        return out

    def term(self):
        fops, ftail = self.final()
        args, calls = [], []
        negs = [a for a, p, _ in self.types if "-" in p]
        for a, p, _ in self.types:
            if "-" in p:
                args.append(("x_" + a, "(param " + a + ")"))
        for a, p, _ in self.types:
            if "+" not in p:
                continue
            args.append(("k_" + a, "(arrow (param " + a + ") (comp (unit) (dirt ())))"))
            for n in negs:
                co = self.type_path(n, a)
                if co:
                    calls.append("(castc (app k_" + a + " (castv x_" + n + " " + co + ")) (cdirty (vrefl-unit) "
                                 + self.empty_to(fops, ftail) + "))")
                    break
        dnegs = [d for d, p in self.dirts if "-" in p]
        for d in dnegs:
            args.append(("kd_" + d, "(arrow (unit) (comp (unit) (dirt () " + d + ")))"))
            co = self.dirt_path(d, fops, ftail)
            if co:
                calls.append("(castc (app kd_" + d + " unit) (cdirty (vrefl-unit) " + co + "))")
        for e, p in self.dirts:
            if "+" not in p:
                continue
            args.append(("g_" + e, "(arrow (arrow (unit) (comp (unit) (dirt () " + e + "))) (comp (unit) (dirt ())))"))
            fn = None
            for d in dnegs:
                co = self.dirt_path(d, [], e)
                if co:
                    fn = "(lam u (unit) (castc (app kd_" + d + " u) (cdirty (vrefl-unit) " + co + ")))"
                    break
            if fn is None:
                fn = "(lam u (unit) (castc (return u) (cdirty (vrefl-unit) (dempty " + e + "))))"
            calls.append("(castc (app g_" + e + " " + fn + ") (cdirty (vrefl-unit) " + self.empty_to(fops, ftail) + "))")
        body = "(castc (return unit) (cdirty (vrefl-unit) " + self.empty_to(fops, ftail) + "))"
        for i, c in reversed(list(enumerate(calls))):
            body = "(do u" + str(i) + " " + c + "\n        " + body + ")"
        term = body
        for i, (v, t) in reversed(list(enumerate(args))):
            term = "(lam " + v + " " + t + "\n      " + term + ")"
            if i > 0:
                term = "(return " + term + ")"
        return "  (term\n    " + term + "))"

    def render(self):
        out = []
        if self.note:
            out.append("; " + self.note)
        out.append("(item " + self.name)
        if self.ops:
            out.append("  (signature " + " ".join("(op " + o + " (unit) (base bool))" for o in self.ops) + ")")
        out += self.context()
        out.append(self.term())
        return "\n".join(out)


def chain(prefix, names):
    return [(prefix + str(i + 1), a, b) for i, (a, b) in enumerate(zip(names, names[1:]))]


ITEMS = [
    # ---- type graphs
    Item("ty_loop", types=[("a", "-"), ("b", "+")], tyco=[("w1", "a", "b"), ("w2", "a", "a")]),
    Item("ty_parallel", types=[("a", "-"), ("b", "+")], tyco=[("w1", "a", "b"), ("w2", "a", "b"), ("w3", "a", "b")]),
    Item("ty_chain3", types=[("a", "-"), ("m", "0"), ("b", "+")], tyco=chain("w", ["a", "m", "b"])),
    Item("ty_cycle2", types=[("a", "-"), ("b", "+")], tyco=[("w1", "a", "b"), ("w2", "b", "a")]),
    Item("ty_cycle3_tail", types=[("a", "-"), ("b", "0"), ("c", "0"), ("z", "+")],
         tyco=[("w1", "a", "b"), ("w2", "b", "c"), ("w3", "c", "a"), ("w4", "c", "z")]),
    Item("ty_two_cycles", types=[("a", "-"), ("b", "0"), ("c", "0"), ("z", "+")],
         tyco=[("w1", "a", "b"), ("w2", "b", "a"), ("w3", "c", "z"), ("w4", "z", "c"), ("w5", "b", "c")]),
    Item("ty_fan_out", types=[("a", "-"), ("b", "+"), ("c", "+"), ("e", "+")],
         tyco=[("w1", "a", "b"), ("w2", "a", "c"), ("w3", "a", "e")]),
    Item("ty_fan_in", types=[("a", "-"), ("b", "-"), ("c", "-"), ("z", "+")],
         tyco=[("w1", "a", "z"), ("w2", "b", "z"), ("w3", "c", "z")]),
    Item("ty_diamond", types=[("a", "-"), ("m1", "0"), ("m2", "0"), ("z", "+")],
         tyco=[("w1", "a", "m1"), ("w2", "a", "m2"), ("w3", "m1", "z"), ("w4", "m2", "z")]),
    Item("ty_loops_and_parallel", types=[("a", "-"), ("b", "+")],
         tyco=[("w1", "a", "b"), ("w2", "a", "b"), ("w3", "b", "b"), ("w4", "a", "a")]),
    Item("ty_chain6", types=[("a", "-"), ("m1", "0"), ("m2", "0"), ("m3", "0"), ("m4", "0"), ("z", "+")],
         tyco=chain("w", ["a", "m1", "m2", "m3", "m4", "z"])),
    Item("ty_bipolar_edge", types=[("a", "+-"), ("b", "+-")], tyco=[("w1", "a", "b")],
         note="Both endpoints bipolar: no bridge applies."),
    Item("ty_bipolar_cycle", types=[("a", "+-"), ("b", "+-")], tyco=[("w1", "a", "b"), ("w2", "b", "a")]),
    Item("ty_isolated", types=[("a", "-"), ("n", "0"), ("b", "+")], tyco=[("w1", "a", "b")]),
    Item("ty_two_skeletons", skels=("s1", "s2"),
         types=[("a", "-", "s1"), ("b", "+", "s1"), ("c", "-", "s2"), ("e", "+", "s2")],
         tyco=[("w1", "a", "b"), ("w2", "c", "e")]),
    Item("ty_hub", types=[("a1", "-"), ("a2", "-"), ("h", "0"), ("b1", "+"), ("b2", "+")],
         tyco=[("w1", "a1", "h"), ("w2", "a2", "h"), ("w3", "h", "b1"), ("w4", "h", "b2")]),
    Item("ty_cycle_exit", types=[("a", "-"), ("b", "+"), ("c", "+")],
         tyco=[("w1", "a", "b"), ("w2", "b", "a"), ("w3", "b", "c")]),
    Item("ty_bipolar_middle", types=[("a", "-"), ("h", "+-"), ("b", "+")], tyco=[("w1", "a", "h"), ("w2", "h", "b")]),
    Item("ty_k22_bipolar", types=[("a1", "-"), ("a2", "+-"), ("b1", "+"), ("b2", "+")],
         tyco=[("w1", "a1", "b1"), ("w2", "a1", "b2"), ("w3", "a2", "b1"), ("w4", "a2", "b2")],
         note="Complete bipartite shape: no node has a single in- or out-edge."),
    # ---- dirt graphs
    Item("di_loop", dirts=[("d", "-"), ("e", "+")], dco=[("p1", [], "d", [], "e"), ("p2", [], "d", [], "d")],
         result=([], "e")),
    Item("di_parallel", dirts=[("d", "-"), ("e", "+")], dco=[("p1", [], "d", [], "e"), ("p2", [], "d", [], "e")],
         result=([], "e")),
    Item("di_cycle", dirts=[("d", "-"), ("e", "+")], dco=[("p1", [], "d", [], "e"), ("p2", [], "e", [], "d")],
         result=([], "e")),
    Item("di_triangle", dirts=[("d1", "-"), ("d2", "-"), ("d3", "+")],
         dco=[("p1", [], "d1", [], "d3"), ("p2", [], "d2", [], "d3")], result=([], "d3")),
    Item("di_unused_result", dirts=[("e", "+")], result=([], "e")),
    Item("di_source_chain", dirts=[("e1", "+"), ("e2", "+")], dco=[("p1", [], "e1", [], "e2")], result=([], "e2")),
    Item("di_source_op", ops=["Get"], dirts=[("d", "+")], dco=[("p1", ["Get"], None, [], "d")], result=([], "d"),
         note="Operation flowing into a dirt parameter."),
    Item("di_source_op_flow", ops=["Get"], dirts=[("d1", "-"), ("d2", "+")],
         dco=[("p1", [], "d1", [], "d2"), ("p2", ["Get"], None, [], "d2")], result=([], "d2")),
    Item("di_fan_in", dirts=[("d1", "-"), ("d2", "-"), ("d3", "-"), ("e", "+")],
         dco=[("p1", [], "d1", [], "e"), ("p2", [], "d2", [], "e"), ("p3", [], "d3", [], "e")], result=([], "e")),
    Item("di_fan_out", dirts=[("d", "-"), ("e1", "+"), ("e2", "+")],
         dco=[("p1", [], "d", [], "e1"), ("p2", [], "d", [], "e2")], result=([], "e2")),
    Item("di_diamond", dirts=[("d", "-"), ("m1", "0"), ("m2", "0"), ("e", "+")],
         dco=[("p1", [], "d", [], "m1"), ("p2", [], "d", [], "m2"), ("p3", [], "m1", [], "e"), ("p4", [], "m2", [], "e")],
         result=([], "e")),
    Item("di_closed_sink", ops=["Put"], dirts=[("d", "-")], dco=[("p1", [], "d", ["Put"], None)], result=(["Put"], None)),
    Item("di_isolated", dirts=[("d", "-"), ("n", "0"), ("e", "+")], dco=[("p1", [], "d", [], "e")], result=([], "e")),
    Item("di_cycle_exit", dirts=[("d1", "-"), ("d2", "0"), ("d3", "0"), ("e", "+")],
         dco=[("p1", [], "d1", [], "d2"), ("p2", [], "d2", [], "d3"), ("p3", [], "d3", [], "d1"), ("p4", [], "d3", [], "e")],
         result=([], "e")),
    Item("di_bipolar", dirts=[("d", "+-"), ("e", "+-")], dco=[("p1", [], "d", [], "e")], result=([], "e")),
    Item("di_labelled_chain", ops=["Get", "Put"], dirts=[("d1", "-"), ("d2", "0"), ("e", "+")],
         dco=[("p1", [], "d1", ["Get"], "d2"), ("p2", [], "d2", ["Put"], "e")], result=(["Get", "Put"], "e")),
    # ---- both
    Item("mix_loops", types=[("a", "-"), ("b", "+")], tyco=[("w1", "a", "b"), ("w2", "a", "a")],
         dirts=[("d", "-"), ("e", "+")], dco=[("p1", [], "d", [], "e"), ("p2", [], "d", [], "e")], result=([], "e")),
    Item("mix_diamonds", types=[("a", "-"), ("m1", "0"), ("m2", "0"), ("z", "+")],
         tyco=[("w1", "a", "m1"), ("w2", "a", "m2"), ("w3", "m1", "z"), ("w4", "m2", "z")],
         dirts=[("d1", "-"), ("d2", "-"), ("d3", "-"), ("e", "+")],
         dco=[("p1", [], "d1", [], "e"), ("p2", [], "d2", [], "e"), ("p3", [], "d3", [], "e")], result=([], "e")),
    Item("mix_cycles", types=[("a", "-"), ("b", "0"), ("z", "+")],
         tyco=[("w1", "a", "b"), ("w2", "b", "a"), ("w3", "b", "z")],
         dirts=[("d", "-"), ("m", "0"), ("e", "+")],
         dco=[("p1", [], "d", [], "m"), ("p2", [], "m", [], "d"), ("p3", [], "m", [], "e")], result=([], "e")),
]

RAW = [
    """; Base-typed parameters reduce away entirely.
(item raw_base_params
  (context
    (skel s)
    (typaram a (base bool)) (typaram b (base bool))
    (tyco w1 (param a) (param b)))
  (term
    (lam x (param a) (castc (return x) (cdirty (vparam w1) (drefl-empty))))))""",
    """; A parameter of arrow skeleton is split into its parts.
(item raw_arrow_skeleton
  (context
    (skel s)
    (typaram a (arrow (param s) (param s))) (typaram b (arrow (param s) (param s)))
    (tyco w1 (param a) (param b)))
  (term
    (lam x (param a)
      (return
        (lam k (arrow (param b) (comp (unit) (dirt ())))
          (app k (castv x (vparam w1))))))))""",
    """; Arrow-typed coercion between parameter types.
(item raw_arrow_coercion
  (context
    (skel s)
    (dirt d1) (dirt d2)
    (typaram a1 (param s)) (typaram a2 (param s)) (typaram b1 (param s)) (typaram b2 (param s))
    (tyco w1 (arrow (param a1) (comp (param a2) (dirt () d1))) (arrow (param b1) (comp (param b2) (dirt () d2)))))
  (poltype (arrow (arrow (param a1) (comp (param a2) (dirt () d1)))
                  (comp (arrow (param b1) (comp (param b2) (dirt () d2))) (dirt ())))))""",
]


# Bipolar shapes that keep type edges under every configuration. They live
# in a separate file so the main corpus reduces to zero type edges.
RESIDUAL = {"ty_bipolar_edge", "ty_k22_bipolar"}


def render_file(header, blocks):
    return "\n".join([header + "\n"] + [b + "\n" for b in blocks])


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "corpus"
    main_items = [i.render() for i in ITEMS if i.name not in RESIDUAL] + RAW
    residual = [i.render() for i in ITEMS if i.name in RESIDUAL]
    files = {
        "synthetic.ce": render_file("; Synthetic corpus. Generated by tools/gen_synthetic.py; edit that file instead.",
                                    main_items),
        "residual.ce": render_file("; Items with bipolar parameters that keep type constraints.\n"
                                   "; Generated by tools/gen_synthetic.py.", residual),
    }
    for name, text in files.items():
        with open(out_dir + "/" + name, "w") as f:
            f.write(text)


if __name__ == "__main__":
    main()
