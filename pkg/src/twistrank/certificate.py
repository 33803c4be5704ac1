"""JSON documents for rank certificates, and their independent re-verification.

All rationals are written as exact ``"num/den"`` strings.
"""

from __future__ import annotations

import json
from typing import Any

from .arith import as_fraction, format_fraction, is_prime, is_squarefree
from .elliptic import (
    CurveQ,
    GroupStructure,
    TwistPoint,
    group_order,
    is_good_reduction,
    order_dividing,
    reduce_curve,
    splits_off,
    twist_curve,
)
from .errors import CertificateError
from .rankcert import (
    INCONCLUSIVE,
    VALID,
    ProjectionMap,
    RankCertificate,
    build_matrix,
    det_mod_p,
)

SCHEMA_VERSION = "1"


def _pt(P):
    return None if P is None else [int(P[0]), int(P[1])]


def to_document(cert: RankCertificate) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "curve": {"a": format_fraction(cert.base_curve.a), "b": format_fraction(cert.base_curve.b)},
        "twist": cert.twist,
        "p": cert.p,
        "points": [[format_fraction(P.x), format_fraction(P.y)] for P in cert.points],
        "places": list(cert.places),
        "projections": [
            {
                "q": pi.q,
                "m": pi.structure.m,
                "n": pi.structure.n,
                "generator_1": _pt(pi.structure.generator_1),
                "generator_2": _pt(pi.structure.generator_2),
                "coefficients": list(pi.coefficients),
            }
            for pi in cert.projections
        ],
        "matrix": [list(row) for row in cert.matrix],
        "determinant": cert.determinant,
        "torsion_witness": cert.torsion_witness,
        "verdict": cert.verdict,
    }


def dumps(cert: RankCertificate) -> str:
    return json.dumps(to_document(cert), indent=2) + "\n"


def _fail(msg: str):
    raise CertificateError(msg)


def _point_or_none(v):
    return None if v is None else (int(v[0]), int(v[1]))


def from_document(doc: dict[str, Any]) -> RankCertificate:
    """Rebuild a certificate from its document, trusting the recorded data.

    Structural checks only (points on the curve, generators on the reduced
    curves); use :func:`verify_document` to recompute everything.
    """
    try:
        if doc["schema_version"] != SCHEMA_VERSION:
            _fail(f"unsupported schema version {doc['schema_version']!r}")
        E = CurveQ(as_fraction(doc["curve"]["a"]), as_fraction(doc["curve"]["b"]))
        d = int(doc["twist"])
        p = int(doc["p"])
        points = tuple(TwistPoint(E, d, as_fraction(x), as_fraction(y)) for x, y in doc["points"])
        places = tuple(int(q) for q in doc["places"])
        projections = []
        for entry in doc["projections"]:
            C = reduce_curve(E, d, int(entry["q"]))
            S = GroupStructure(
                C.q,
                int(entry["m"]),
                int(entry["n"]),
                _point_or_none(entry["generator_1"]),
                _point_or_none(entry["generator_2"]),
            )
            if not (C.contains(S.generator_1) and C.contains(S.generator_2)):
                _fail(f"generators are not on the curve mod {C.q}")
            c1, c2 = (int(c) for c in entry["coefficients"])
            projections.append(ProjectionMap(C, p, S, (c1, c2)))
        witness = doc["torsion_witness"]
        return RankCertificate(
            base_curve=E,
            twist=d,
            p=p,
            points=points,
            places=places,
            projections=tuple(projections),
            matrix=tuple(tuple(int(v) for v in row) for row in doc["matrix"]),
            determinant=int(doc["determinant"]),
            torsion_witness=None if witness is None else int(witness),
            verdict=str(doc["verdict"]),
        )
    except CertificateError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc


def loads(text: str) -> RankCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not JSON: {exc}") from exc
    return from_document(doc)


def verify_document(doc: dict[str, Any]) -> RankCertificate:
    """Recompute every claim of a certificate document from scratch.

    Raises CertificateError on the first mismatch. Returns the parsed
    certificate, whose verdict is then known to be correct.
    """
    cert = from_document(doc)
    E, d, p = cert.base_curve, cert.twist, cert.p
    r = cert.r
    if p == 2 or not is_prime(p):
        _fail("p must be an odd prime")
    if len(cert.places) != r or len(set(cert.places)) != r or len(cert.projections) != r:
        _fail("need r pairwise distinct places, one projection each")
    if not is_squarefree(d):
        _fail(f"twist {d} is not squarefree")
    for q, pi in zip(cert.places, cert.projections):
        if pi.q != q:
            _fail(f"projection recorded for q={pi.q} but place is {q}")
        if q == p or not is_prime(q) or q == 2:
            _fail(f"place {q} is not an odd prime different from p")
        N = group_order(pi.curve)
        if N % p:
            _fail(f"{p} does not divide #E^{d}(F_{q}) = {N}")
        _check_projection(pi, N)
    matrix = build_matrix(cert.points, cert.projections)
    if tuple(tuple(row) for row in matrix) != cert.matrix:
        _fail(f"matrix mismatch: recomputed {matrix}")
    det = det_mod_p(matrix, p)
    if det != cert.determinant:
        _fail(f"determinant mismatch: recomputed {det}")
    w = cert.torsion_witness
    if w is not None:
        if w == p or w == 2 or not is_prime(w) or not is_good_reduction(twist_curve(E, d), w):
            _fail(f"torsion witness {w} is not a good odd prime different from p")
        if group_order(reduce_curve(E, d, w)) % p == 0:
            _fail(f"torsion witness {w} does not certify E^{d}(Q)[{p}] = 0")
    expected = VALID if det != 0 and w is not None else INCONCLUSIVE
    if cert.verdict != expected:
        _fail(f"verdict {cert.verdict} but the data support {expected}")
    return cert


def _check_projection(pi: ProjectionMap, N: int):
    # The recorded generators must give E(F_q) = Z/m x Z/n, and the
    # coefficients a well-defined surjection to F_p.
    C, S, p = pi.curve, pi.structure, pi.p
    m, n = S.m, S.n
    if m * n != N or n % m:
        _fail(f"structure ({m}, {n}) inconsistent with order {N} at q={C.q}")
    g1, g2 = S.generator_1, S.generator_2
    if C._mul(m, g1) is not None or C._mul(n, g2) is not None:
        _fail(f"generator orders do not divide ({m}, {n}) at q={C.q}")
    # <g1> and <g2> have orders m and n and meet trivially iff every element of
    # prime order in <g1> avoids <g2>; together with mn = N they span.
    if order_dividing(C, g2, n) != n:
        _fail(f"generator_2 does not have order {n} at q={C.q}")
    if m > 1 and not splits_off(C, g1, m, g2, n):
        _fail(f"generators do not split the group at q={C.q}")
    c1, c2 = pi.coefficients
    if c1 % p and m % p:
        _fail("coefficient on generator_1 is not well defined mod p")
    if n % p:
        _fail(f"{p} does not divide n={n}")
    if (c1 % p, c2 % p) == (0, 0) or (c2 % p == 0 and m % p):
        _fail("projection is not surjective")
