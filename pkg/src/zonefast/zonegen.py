"""Deterministic synthetic zones shaped like large TLD zones."""

from __future__ import annotations

import base64
import random
from typing import Callable, Iterator, TextIO

# (type, weight in percent)
PROFILES: dict[str, tuple[tuple[str, int], ...]] = {
    "com": (("NS", 50), ("DS", 20), ("RRSIG", 5), ("NSEC3", 15), ("A", 7), ("AAAA", 3)),
    "se": (("RRSIG", 44), ("NSEC3", 22), ("DS", 10), ("NS", 20), ("A", 4)),
    "mixed": (
        ("A", 15), ("AAAA", 10), ("NS", 10), ("MX", 8), ("TXT", 10), ("CNAME", 8), ("SRV", 5),
        ("HTTPS", 5), ("SVCB", 3), ("DNSKEY", 4), ("RRSIG", 8), ("NSEC", 4), ("DS", 5), ("GENERIC", 5),
    ),
}

_LABEL_CHARS = "abcdefghijklmnopqrstuvwxyz0123456789"
_B32HEX = "0123456789abcdefghijklmnopqrstuv"


class _Zone:
    def __init__(self, rng: random.Random, origin: str):
        self.rng = rng
        self.origin = origin

    def label(self, longest: int = 32) -> str:
        rng = self.rng
        n = rng.randint(1, longest)
        return "".join(rng.choice(_LABEL_CHARS) for _ in range(n))

    def host(self) -> str:
        return f"ns{self.rng.randint(1, 4)}.{self.label(20)}.{self.rng.choice(['net', 'org', 'com'])}."

    def blob(self, n: int) -> str:
        return base64.b64encode(self.rng.randbytes(n)).decode()

    def ipv4(self) -> str:
        return ".".join(str(self.rng.randrange(256)) for _ in range(4))

    def ipv6(self) -> str:
        rng = self.rng
        return f"2001:db8:{rng.randrange(65536):x}:{rng.randrange(65536):x}::{rng.randrange(1, 65536):x}"

    def rdata(self, rtype: str) -> tuple[str, str]:
        rng = self.rng
        if rtype == "NS":
            return "NS", self.host()
        if rtype == "DS":
            return "DS", f"{rng.randrange(65536)} 8 2 {rng.randbytes(32).hex().upper()}"
        if rtype == "RRSIG":
            covered = rng.choice(["NS", "DS", "NSEC3", "A"])
            return "RRSIG", (
                f"{covered} 8 2 86400 20240{rng.randint(1, 9)}01000000 20230{rng.randint(1, 9)}01000000 "
                f"{rng.randrange(65536)} {self.origin} {self.blob(128)}"
            )
        if rtype == "NSEC3":
            hashed = "".join(rng.choice(_B32HEX) for _ in range(32))
            return "NSEC3", f"1 1 0 - {hashed} NS DS RRSIG"
        if rtype == "A":
            return "A", self.ipv4()
        if rtype == "AAAA":
            return "AAAA", self.ipv6()
        if rtype == "MX":
            return "MX", f"{rng.randrange(100)} mail.{self.label(12)}"
        if rtype == "TXT":
            return "TXT", f'"v=spf1 ip4:{self.ipv4()} -all" "k\\;{self.label(8)} \\"q\\""'
        if rtype == "CNAME":
            return "CNAME", f"{self.label(16)}.{self.origin}"
        if rtype == "SRV":
            return "SRV", f"{rng.randrange(10)} {rng.randrange(100)} {rng.randrange(65536)} {self.label(10)}"
        if rtype == "HTTPS":
            return "HTTPS", f'1 . alpn="h2,h3" port=443 ipv4hint={self.ipv4()}'
        if rtype == "SVCB":
            return "SVCB", f"16 {self.host()} ( alpn=h2,h3-19 mandatory=ipv4hint,alpn\n    ipv4hint={self.ipv4()} )"
        if rtype == "DNSKEY":
            return "DNSKEY", f"257 3 8 ( {self.blob(132)}\n    {self.blob(128)} ) ; key"
        if rtype == "NSEC":
            return "NSEC", f"{self.label(12)}.{self.origin} A NS RRSIG NSEC TYPE1234"
        return f"TYPE{rng.choice([1, 65280, 65534])}", f"\\# 4 {rng.randbytes(4).hex().upper()}"


def generate_lines(records: int, profile: str = "com", seed: int = 0) -> Iterator[str]:
    """Yield the lines of a zone holding exactly ``records`` records."""
    if records < 1:
        raise ValueError("records must be at least 1")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    rng = random.Random(seed)
    origin = {"com": "com.", "se": "se.", "mixed": "example.com."}[profile]
    zone = _Zone(rng, origin)
    types = [t for t, _ in PROFILES[profile]]
    weights = [w for _, w in PROFILES[profile]]
    yield f"$ORIGIN {origin}"
    yield "$TTL 86400"
    yield (
        f"@ 900 IN SOA a.ns.{origin} hostmaster.{origin} ( {rng.randrange(1 << 31)} ; serial\n"
        "    1800 900 604800 86400 )"
    )
    remaining = records - 1
    while remaining:
        owner = zone.label()
        if rng.random() < 0.5:
            owner += "." + origin
        # one to three records share an owner; followers inherit it
        for k in range(min(remaining, rng.choice((1, 1, 2, 3)))):
            rtype, rdata = zone.rdata(rng.choices(types, weights)[0])
            head = owner if k == 0 else "   "
            ttl = f" {rng.choice((3600, 86400, 172800))}" if rng.random() < 0.3 else ""
            klass = " IN" if rng.random() < 0.5 else ""
            yield f"{head}{ttl}{klass} {rtype} {rdata}"
            remaining -= 1


def write_zone(out: TextIO, records: int, profile: str = "com", seed: int = 0) -> None:
    write: Callable[[str], object] = out.write
    batch: list[str] = []
    for line in generate_lines(records, profile, seed):
        batch.append(line)
        if len(batch) >= 4096:
            write("\n".join(batch) + "\n")
            batch.clear()
    if batch:
        write("\n".join(batch) + "\n")


def generate_bytes(records: int, profile: str = "com", seed: int = 0) -> bytes:
    return ("\n".join(generate_lines(records, profile, seed)) + "\n").encode()


def generate_size(size: int, profile: str = "com", seed: int = 0) -> bytes:
    """A zone of at least ``size`` bytes, grown in whole records."""
    out: list[bytes] = []
    total = 0
    # a generous upper bound on the record count; stop once large enough
    for line in generate_lines(max(size // 16, 2), profile, seed):
        encoded = line.encode() + b"\n"
        out.append(encoded)
        total += len(encoded)
        if total >= size:
            break
    return b"".join(out)
