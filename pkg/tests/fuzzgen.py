"""Seeded generator of small, often malformed zone files for differential runs."""

from __future__ import annotations

import random

LETTERS = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_"
NOISE = [b" ", b"\t", b"\n", b'"', b";", b"(", b")", b"\\", b".", b"0", b"a", b"\x00", b"=", b",", b"@", b"#", b"$", b"\r", b"9", b":"]


def _label(rng: random.Random) -> str:
    n = rng.choice([1, 2, 3, 3, 4, 5, 6, 8, 10, 13, 20, 32]) if rng.random() < 0.97 else rng.choice([63, 64])
    return "".join(rng.choice(LETTERS) for _ in range(n))


def _name(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.08:
        return "@"
    if roll < 0.12:
        return "."
    labels = [_label(rng) for _ in range(rng.choice([1, 1, 2, 3, 4]))]
    if rng.random() < 0.15:
        i = rng.randrange(len(labels))
        labels[i] = labels[i][:3] + rng.choice(["\\.", "\\065", "\\255", "\\256", "\\;", "\\ ", "\\1", "\\\\", "\\("]) + labels[i][3:]
    text = ".".join(labels)
    if rng.random() < 0.02:
        text = ".".join(labels * 40)
    return text + ("." if rng.random() < 0.6 else "")


def _u(rng: random.Random, bits: int) -> str:
    roll = rng.random()
    if roll < 0.05:
        return str(1 << bits)
    if roll < 0.08:
        return "0" * rng.randrange(1, 15) + "7"
    if roll < 0.1:
        return "x1"
    return str(rng.randrange(1 << bits))


def _ipv4(rng: random.Random) -> str:
    parts = [str(rng.randrange(256)) for _ in range(4)]
    roll = rng.random()
    if roll < 0.05:
        parts[0] = "256"
    elif roll < 0.1:
        parts = parts[:3]
    elif roll < 0.13:
        parts[1] = "01"
    return ".".join(parts)


def _ipv6(rng: random.Random) -> str:
    groups = [f"{rng.randrange(65536):x}" for _ in range(8)]
    roll = rng.random()
    if roll < 0.3:
        i = rng.randrange(8)
        j = rng.randrange(i, 8)
        return ":".join(groups[:i]) + "::" + ":".join(groups[j + 1 :])
    if roll < 0.4:
        return ":".join(groups[:6]) + ":" + _ipv4(rng)
    if roll < 0.45:
        return ":::"
    if roll < 0.5:
        return "1::2::3"
    return ":".join(groups)


def _hex(rng: random.Random, n: int) -> str:
    text = bytes(rng.randrange(256) for _ in range(n)).hex()
    if rng.random() < 0.05:
        text += "g"
    if rng.random() < 0.05:
        text = text[:-1]
    return text


def _b64(rng: random.Random, n: int) -> str:
    import base64

    text = base64.b64encode(bytes(rng.randrange(256) for _ in range(n))).decode()
    roll = rng.random()
    if roll < 0.2:
        text = text.rstrip("=")
    elif roll < 0.25:
        text += "A"
    elif roll < 0.28:
        text += "!"
    return text


def _b32(rng: random.Random, n: int) -> str:
    import base64

    text = base64.b32hexencode(bytes(rng.randrange(256) for _ in range(n))).decode()
    if rng.random() < 0.7:
        text = text.rstrip("=")
    if rng.random() < 0.1:
        text = text.lower()
    if rng.random() < 0.05:
        text += "W"
    return text


def _timestamp(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.2:
        return str(rng.randrange(1 << 32))
    if roll < 0.25:
        return "20240230000000"
    if roll < 0.28:
        return "00001231235959"
    return f"{rng.randrange(1, 10000):04d}{rng.randrange(1, 13):02d}{rng.randrange(1, 29):02d}{rng.randrange(24):02d}{rng.randrange(60):02d}{rng.randrange(60):02d}"


def _string(rng: random.Random) -> str:
    body = "".join(rng.choice(LETTERS + " ;()\n\\\"") for _ in range(rng.choice([0, 1, 5, 20, 300])))
    if rng.random() < 0.5:
        body = body.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{body}"'
    word = "".join(c for c in body if c not in ' ;()\n"\\') or "x"
    return word + rng.choice(["", "\\008", "\\;", "\\\"", "\\999"])


def _svc_params(rng: random.Random) -> str:
    choices = [
        "alpn=h2,h3-19",
        'alpn="h2,h3"',
        "alpn=h2\\,x",
        "mandatory=ipv4hint,alpn",
        "mandatory=alpn,alpn",
        "no-default-alpn",
        "no-default-alpn=x",
        "port=443",
        "port=65536",
        "port=4\\43",
        "ipv4hint=192.0.2.1,192.0.2.2",
        "ipv6hint=2001:db8::1",
        "ech=AAAA",
        "key65000=\\001x",
        'key7="a b"',
        "key65535=1",
        "bogus=1",
        "alpn=",
        "alpn= ",
    ]
    return " ".join(rng.sample(choices, rng.randrange(0, 5)))


RDATA = {
    "A": lambda r: _ipv4(r),
    "AAAA": lambda r: _ipv6(r),
    "NS": lambda r: _name(r),
    "CNAME": lambda r: _name(r),
    "PTR": lambda r: _name(r),
    "DNAME": lambda r: _name(r),
    "MX": lambda r: f"{_u(r, 16)} {_name(r)}",
    "SRV": lambda r: f"{_u(r, 16)} {_u(r, 16)} {_u(r, 16)} {_name(r)}",
    "SOA": lambda r: f"{_name(r)} {_name(r)} ( {_u(r, 32)} ; serial\n {_u(r, 32)} {_u(r, 32)} {_u(r, 32)} {_u(r, 32)} )",
    "TXT": lambda r: " ".join(_string(r) for _ in range(r.randrange(0, 4))),
    "SPF": lambda r: _string(r),
    "DS": lambda r: f"{_u(r, 16)} {_u(r, 8)} {_u(r, 8)} {_hex(r, 32)} {_hex(r, r.choice([0, 1, 2]))}",
    "CDS": lambda r: f"{_u(r, 16)} 13 2 {_hex(r, 32)}",
    "DNSKEY": lambda r: f"256 3 {_u(r, 8)} {_b64(r, r.choice([32, 64, 65]))}",
    "CDNSKEY": lambda r: f"257 3 8 ( {_b64(r, 48)} {_b64(r, 3)} )",
    "RRSIG": lambda r: f"{r.choice(['A', 'NS', 'TYPE65534', 'XX'])} 8 {_u(r, 8)} 3600 {_timestamp(r)} {_timestamp(r)} {_u(r, 16)} {_name(r)} {_b64(r, 64)}",
    "NSEC": lambda r: f"{_name(r)} " + " ".join(r.sample(["A", "NS", "RRSIG", "NSEC", "TYPE1234", "AAAA", "FOO", "TYPE65535"], r.randrange(0, 4))),
    "NSEC3": lambda r: f"1 {_u(r, 8)} {_u(r, 16)} {r.choice(['-', _hex(r, 4), 'AB1'])} {_b32(r, 20)} " + " ".join(r.sample(["A", "NS", "RRSIG", "DS"], r.randrange(0, 3))),
    "NSEC3PARAM": lambda r: f"1 0 {_u(r, 16)} {r.choice(['-', _hex(r, 8)])}",
    "SVCB": lambda r: f"{_u(r, 16)} {_name(r)} {_svc_params(r)}",
    "HTTPS": lambda r: f"1 . {_svc_params(r)}",
    "TYPE1": lambda r: _ipv4(r),
    "HINFO": lambda r: '"cpu" "os"',
    "CAA": lambda r: r"\# 3 000102",
}


def _generic(rng: random.Random) -> str:
    n = rng.choice([0, 1, 4, 16])
    declared = n if rng.random() < 0.8 else n + rng.choice([-1, 1, 70000])
    return f"\\# {declared} " + " ".join(_hex(rng, k) for k in ([n] if n < 4 else [n // 2, n - n // 2]))


def _record(rng: random.Random) -> str:
    rtype = rng.choice(list(RDATA))
    owner = _name(rng) if rng.random() < 0.8 else ""
    header = []
    if rng.random() < 0.5:
        header.append(rng.choice(["3600", "0", "86400", "300", "00300"]) if rng.random() < 0.9 else rng.choice(["2147483648", "4294967296"]))
    if rng.random() < 0.5:
        header.insert(rng.randrange(len(header) + 1), rng.choice(["IN", "in", "CLASS1", "CH", "CLASS65535"]))
    type_text = rtype.lower() if rng.random() < 0.2 else rtype
    rdata = _generic(rng) if rng.random() < 0.15 else RDATA[rtype](rng)
    line = " ".join([owner] + header + [type_text, rdata]) if owner else "  " + " ".join(header + [type_text, rdata])
    if rng.random() < 0.2:
        line += " ; " + rng.choice(["comment", 'quote " in comment', "paren ( in comment", "back\\slash"])
    return line


def _directive(rng: random.Random) -> str:
    return rng.choice(
        [
            f"$ORIGIN {_name(rng)}",
            f"$TTL {_u(rng, 32)}",
            "$ttl 300",
            "$INCLUDE does-not-exist.zone",
            "$BOGUS x",
            "$ORIGIN",
            "$TTL 1 2",
        ]
    )


def _mutate(rng: random.Random, data: bytearray) -> bytearray:
    for _ in range(rng.randrange(1, 4)):
        if not data:
            break
        roll = rng.random()
        at = rng.randrange(len(data) + 1)
        if roll < 0.5:
            data[at:at] = rng.choice(NOISE)
        elif roll < 0.8:
            del data[at : at + rng.randrange(1, 4)]
        else:
            data[at:at] = data[rng.randrange(len(data)) :][: rng.randrange(1, 12)]
    return data


def generate(seed: int) -> bytes:
    rng = random.Random(seed)
    lines = []
    if rng.random() < 0.8:
        lines.append("$ORIGIN example.com.")
    if rng.random() < 0.8:
        lines.append("example.com. 3600 IN NS ns1.example.com.")
    for _ in range(rng.randrange(1, 12)):
        roll = rng.random()
        if roll < 0.1:
            lines.append(_directive(rng))
        elif roll < 0.15:
            lines.append(rng.choice(["", "   ", "; just a comment", "( )", "((", ")"]))
        else:
            lines.append(_record(rng))
    eol = "\r\n" if rng.random() < 0.1 else "\n"
    text = eol.join(lines)
    if rng.random() < 0.8:
        text += eol
    data = bytearray(text.encode("latin-1"))
    if rng.random() < 0.4:
        data = _mutate(rng, data)
    return bytes(data)
