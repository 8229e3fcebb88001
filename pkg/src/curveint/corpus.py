"""The bundled verification corpus.

Local-multiplicity instances (affine pairs at the origin), projective
Bezout instances including points at infinity, irrational clusters over Q,
and prime-field instances at p in {7, 101, 32003}.  Characteristics 2, 3
and 5 are excluded here (wild ramification risk) but remain accepted as
explicit user input with a warning.

Every entry re-serializes to an identical Job; the acceptance suite also
runs the staged-specialization and left/right-factoring identities over
the affine instances.
"""


def _mult(name, f, g, expected, field="Q", point="0,0"):
    return {
        "name": name,
        "kind": "mult",
        "expected_mult": expected,
        "job": {"command": "mult", "curves": [f, g], "field": field,
                "point": point, "seed": 0, "precision": None,
                "format": "json", "a0": None},
    }


def _bezout(name, F, G, field="Q"):
    return {
        "name": name,
        "kind": "bezout",
        "job": {"command": "bezout", "curves": [F, G], "field": field,
                "point": None, "seed": 0, "precision": None,
                "format": "json", "a0": None},
    }


def corpus_manifest():
    """The bundled instances, in a fixed order."""
    return [
        # --- local multiplicities over Q ------------------------------
        _mult("transverse-lines", "x", "y", 1),
        _mult("tangent-conics", "x^2 - y", "x^2 - 2*y", 2),
        _mult("cusp-vs-horizontal", "x^2 - y^3", "y", 2),
        _mult("cusp-vs-vertical", "x^2 - y^3", "x", 3),
        _mult("double-parabola-vs-line", "(y - x^2)^2", "x", 2),
        _mult("cusp-vs-diagonal", "x^2 - y^3", "y - x", 2),
        _mult("nonreduced-vs-transverse", "x^2*y", "x + y", 3),
        _mult("double-line-vs-line", "(x - y)^2", "x", 2),
        _mult("mirror-cusp", "x^3 - y^2", "y", 3),
        _mult("node-vs-line", "x*y", "x - y", 2),
        _mult("point-pair-conic", "x^2 + y^2", "x", 2),
        _mult("tangent-parabolas", "y - x^2", "y - 2*x^2", 2),
        _mult("factored-cubic-vs-line", "x^3 - y^3", "x + y", 3),
        _mult("tacnode-pair-vs-axis", "(y - x^2)*(y + x^2)", "y", 4),
        _mult("cubic-tangency", "y - x^3", "y", 3),
        _mult("smooth-conic-pair", "x^2 + y^2 - x", "y - x^2", 1),
        # --- Bezout over Q --------------------------------------------
        _bezout("lines-projective", "X", "Y"),
        _bezout("cusp-vs-infinity-line", "X^2*Z - Y^3", "Y"),
        _bezout("double-line-projective", "(X - Y)^2", "X"),
        _bezout("conic-vs-far-line", "x^2 + y^2 - 1", "x - 3"),
        _bezout("tangent-conics-projective", "x^2 - y", "x^2 - 2*y"),
        _bezout("two-conics-quartic-cluster", "x^2 + y^2 - 1", "x^2 - y"),
        _bezout("cusp-vs-diagonal-projective", "x^2 - y^3", "y - x"),
        _bezout("hyperbola-vs-line", "x*y - 1", "x"),
        _bezout("reducible-conic-vs-line", "Y*Z", "X"),
        # --- prime fields ---------------------------------------------
        _mult("f7-cusp-vs-horizontal", "x^2 - y^3", "y", 2, field="F7"),
        _mult("f7-tangent-conics", "x^2 - y", "x^2 - 2*y", 2, field="F7"),
        _bezout("f7-lines", "X", "Y", field="F7"),
        _bezout("f7-cusp-vs-infinity", "X^2*Z - Y^3", "Y", field="F7"),
        _mult("f101-cusp-vs-vertical", "x^2 - y^3", "x", 3, field="F101"),
        _bezout("f101-conic-vs-line", "x^2 + y^2 - 1", "x - 3", field="F101"),
        _mult("f32003-tangent-conics", "x^2 - y", "x^2 - 2*y", 2,
              field="F32003"),
        _bezout("f32003-node-vs-line", "x*y", "x - y", field="F32003"),
    ]


def affine_instances():
    """(name, f text, g text, field) for the local corpus instances; the
    property checks run on these."""
    out = []
    for entry in corpus_manifest():
        if entry["kind"] == "mult":
            job = entry["job"]
            out.append((entry["name"], job["curves"][0], job["curves"][1],
                        job["field"]))
    return out
