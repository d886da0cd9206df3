"""Text format for linkage certificates, and a verifier that rebuilds everything.

    char3-linkage-cert v1
    vars = a,b

    [witness]
    alpha = a
    beta = b
    gamma = b
    r = elem[0, 1, 0; 0, 0, 0; 0, 0, 0]

    [slot]
    ext = trivial
    lambda = ext[1, 0, 0]
    z = elem[0, 1, 0; 0, 0, 0; 0, 0, 0]
    zc = b

    [cross]
    w = elem[0, 1, 0; 0, 0, 0; 0, 0, 0]

    [complement]          (optional)
    u = elem[...]
    delta = a

lambda lives in L = E[x] with x^3 - x = alpha; z and u in [alpha, beta) over
E; w in [alpha, gamma) over E. All values use the shared element grammar.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .exactfield import FunctionField
from .grammar import DescriptorError, ParseError, parse_alg_element, parse_descriptor, parse_in
from .katomilne import reverse_chain_checks
from .symbolalg import SymbolAlgebra, char_forms
from .towers import ArtinSchreier, field_norm

HEADER = "char3-linkage-cert v1"

SECTIONS = {
    "witness": ("alpha", "beta", "gamma", "r"),
    "slot": ("ext", "lambda", "z", "zc"),
    "cross": ("w",),
    "complement": ("u", "delta"),
}
REQUIRED = ("witness", "slot", "cross")

_KEY = re.compile(r"^([A-Za-z_]+)\s*=\s*(.*)$")


def format_certificate(cert) -> str:
    F = cert.witness.r.parent.center
    slot = cert.slot
    E = slot.ext
    lines = [
        HEADER,
        f"vars = {','.join(F.vars)}",
        "",
        "[witness]",
        f"alpha = {F.format(cert.alpha)}",
        f"beta = {F.format(cert.beta)}",
        f"gamma = {F.format(cert.gamma)}",
        f"r = {cert.witness.r}",
        "",
        "[slot]",
        f"ext = {E.descriptor()}",
        f"lambda = {slot.lam}",
        f"z = {slot.z}",
        f"zc = {E.format(slot.zc)}",
        "",
        "[cross]",
        f"w = {cert.w}",
    ]
    if cert.u is not None:
        lines += ["", "[complement]", f"u = {cert.u}", f"delta = {E.format(cert.delta)}"]
    return "\n".join(lines) + "\n"


@dataclass
class CertificateRecord:
    vars: tuple
    values: dict = field(default_factory=dict)  # (section, key) -> text
    lines: dict = field(default_factory=dict)  # (section, key) -> line number


def parse_certificate_text(text: str) -> CertificateRecord:
    raw = text.splitlines()
    body = [(n + 1, line.strip()) for n, line in enumerate(raw)]
    body = [(n, line) for n, line in body if line and not line.startswith("#")]
    if not body or body[0][1] != HEADER:
        raise ParseError(f"line 1: expected header {HEADER!r}")
    section = None
    vars_ = None
    rec = CertificateRecord(())
    for n, line in body[1:]:
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1] not in SECTIONS:
                raise ParseError(f"line {n}: unknown section {line}")
            section = line[1:-1]
            if any(s == section for s, _ in rec.values):
                raise ParseError(f"line {n}: repeated section {line}")
            continue
        m = _KEY.match(line)
        if not m:
            raise ParseError(f"line {n}: expected 'key = value'")
        key, value = m.group(1), m.group(2).strip()
        if section is None:
            if key != "vars" or vars_ is not None:
                raise ParseError(f"line {n}: unexpected key {key!r} before the first section")
            vars_ = tuple(v.strip() for v in value.split(","))
            continue
        if key not in SECTIONS[section]:
            raise ParseError(f"line {n}: unknown key {key!r} in [{section}]")
        if (section, key) in rec.values:
            raise ParseError(f"line {n}: repeated key {key!r}")
        rec.values[(section, key)] = value
        rec.lines[(section, key)] = n
    if vars_ is None:
        raise ParseError("missing 'vars = ...' line")
    try:
        FunctionField(vars_)
    except ValueError as exc:
        raise ParseError(f"bad variable list: {exc}") from exc
    rec.vars = vars_
    for s in REQUIRED + (("complement",) if any(k[0] == "complement" for k in rec.values) else ()):
        for key in SECTIONS[s]:
            if (s, key) not in rec.values:
                raise ParseError(f"missing {key!r} in [{s}]")
    return rec


@dataclass
class Verification:
    verified: bool
    transcript: list
    failed: str | None = None

    def __bool__(self) -> bool:
        return self.verified

    def report(self) -> str:
        tail = "verified" if self.verified else f"refuted at: {self.failed}"
        return "\n".join(self.transcript + [tail]) + "\n"


class _Refuted(Exception):
    pass


def verify_certificate_text(text: str) -> Verification:
    """Check every equation of a certificate by exact arithmetic, stopping at the first failure.

    Syntax errors raise ParseError; failed equations and invalid descriptors
    are refutations.
    """
    rec = parse_certificate_text(text)
    F = FunctionField(rec.vars)
    transcript: list[str] = []

    def get(section, key, field_):
        try:
            return parse_in(rec.values[(section, key)], field_)
        except ParseError as exc:
            raise ParseError(f"line {rec.lines[(section, key)]}: {key}: {exc}") from exc

    def get_elem(section, key, algebra):
        try:
            return parse_alg_element(rec.values[(section, key)], algebra)
        except ParseError as exc:
            raise ParseError(f"line {rec.lines[(section, key)]}: {key}: {exc}") from exc

    def check(label: str, ok: bool, detail: str = "") -> None:
        transcript.append(f"[{'ok' if ok else 'FAIL'}] {label}" + (f"  ({detail})" if detail else ""))
        if not ok:
            raise _Refuted(label)

    def build(label, make):
        try:
            value = make()
        except (ValueError, NotImplementedError) as exc:
            check(label, False, str(exc))
        check(label, True)
        return value

    try:
        alpha, beta, gamma = (get("witness", k, F) for k in ("alpha", "beta", "gamma"))
        check("beta != 0", not beta.is_zero())
        A = SymbolAlgebra(F, alpha, beta)
        build("alpha is not l^3 - l in F", lambda: A.k_field)
        r = get_elem("witness", "r", A)
        check("gamma is not a cube in F", not gamma.is_zero() and F.cube_root(gamma) is None)
        n = char_forms(r).norm
        check("N(r) = gamma", n == gamma, f"N(r) = {F.format(n)}")

        try:
            E = parse_descriptor(rec.values[("slot", "ext")], F)
        except DescriptorError as exc:
            check(f"descriptor E = {rec.values[('slot', 'ext')]}", False, exc.message)
        check(f"descriptor E = {rec.values[('slot', 'ext')]}", E.degree in (1, 2) and E.base_field == F)
        L = build(f"L = as(alpha) over E is a field", lambda: ArtinSchreier(E, E(alpha)))
        AE = A if E == F else SymbolAlgebra(E, E(alpha), E(beta))
        lam = get("slot", "lambda", L)
        z = get_elem("slot", "z", AE)
        zc = get("slot", "zc", E)
        rE = r if AE is A else AE.element(r.coords)
        check("z = lambda*r", z == AE.from_k(lam) * rE)
        forms = char_forms(z)
        check("Tr(z) = 0", forms.tr.is_zero())
        check("sigma(z) = 0", forms.sigma.is_zero())
        nl = field_norm(lam)
        check(
            "z^3 = N(lambda)*gamma",
            z * z * z == AE.scalar(zc) and zc == nl * E(gamma),
            f"N(lambda) = {E.format(nl)}",
        )
        check("z is not in E", not z.is_scalar())
        check("N(lambda)*gamma is not a cube in E", E.cube_root(zc) is None)

        B = SymbolAlgebra(E, E(alpha), E(gamma))
        w = get_elem("cross", "w", B)
        check("w = lambda*y in [alpha, gamma) over E", w == B.from_k(lam) * B.y)
        check("w^3 = z^3", w * w * w == B.scalar(zc))

        if ("complement", "u") in rec.values:
            u = get_elem("complement", "u", AE)
            delta = get("complement", "delta", E)
            check("z*u*z^-1 = u + 1", z * u == (u + 1) * z)
            check("u^3 - u = delta", u * u * u - u == AE.scalar(delta))
            try:
                chain = reverse_chain_checks(alpha, beta, gamma, zc, delta)
            except NotImplementedError as exc:
                transcript.append(f"[skip] form identities over E ({exc})")
            else:
                for label, ok in chain:
                    check(label, ok)
    except _Refuted as exc:
        return Verification(False, transcript, str(exc))
    return Verification(True, transcript)
