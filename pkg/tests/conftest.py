from __future__ import annotations

import pathlib
import sys

import pytest

TESTS = pathlib.Path(__file__).parent
sys.path.insert(0, str(TESTS))

KERNELS = ("scalar", "v128", "v256")

# The 64-byte sample line: a TXT record followed by a comment, ending in a newline.
SAMPLE_LINE = b'example.com.  3600  IN  TXT  "v=spf1 ip4:192.0.2.1 -all"  ; SPF\n'
SAMPLE_FIELDS = [0, 14, 20, 24, 29, 63]
SAMPLE_DELIMITERS = [12, 18, 22, 27, 55]

EXAMPLE_ZONE = b"""$ORIGIN example.com.  ; Defines the origin of the zone

; Free standing @ is replaced by origin
@ 3600 SOA ns1.example.com. hm.example.com. ( 2024071301 ; YYYYMMDDNN
    ; Increased by 1 for changes
    3600 ; Refresh (how often to check for updates)
    600 ; Retry (how often to retry after a failed refresh)
    86400 ; Expire (how long to use zone data)
    3600 ) ; Minimum TTL (how long to cache data)

; Name server records
ns1 86400 NS ns1.example.com.
ns2 86400 NS ns2.example.com.

; Mail server record
mx 10 mail.example.com.

; Web server record
www 3600 A 192.168.1.100
"""

SVCB_ENTRY = b"""example.com.   SVCB   16 foo.example.org. (
                         alpn=h2,h3-19 mandatory=ipv4hint,alpn
                         ipv4hint=192.0.2.1
                         )
"""


def wire(text: str) -> bytes:
    """Wire form of an absolute dotted name without escapes."""
    out = bytearray()
    for label in text.rstrip(".").split("."):
        if label:
            out.append(len(label))
            out += label.encode()
    return bytes(out) + b"\x00"


@pytest.fixture(params=KERNELS)
def kernel_name(request) -> str:
    return request.param


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import RESULTS, SCALE

    if not RESULTS:
        return
    terminalreporter.section(f"acceptance criteria ({SCALE} scale)")
    for criterion, passed, detail in RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {criterion}: {detail}")
