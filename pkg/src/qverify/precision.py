"""Backend selection.

Two profiles are supported:

``double``
    IEEE double arithmetic, using the compiled kernel extension when it was
    built and the pure-Python kernels otherwise.  This is the default.
``pure``
    Force the pure-Python kernels even when the extension is available.
    Results are the same algorithm in the same precision; pinning the
    profile makes runs byte-for-byte reproducible across installs that
    differ only in whether the extension compiled.

The profile can be set programmatically, through the ``QVERIFY_PRECISION``
environment variable, or per run from the CLI.
"""

import os

PROFILES = ("double", "pure")

ENV_VAR = "QVERIFY_PRECISION"

_state = {"profile": None}


def resolve_profile(explicit=None):
    """Return the profile to use, validating the name.

    Priority: explicit argument, then a previously set profile, then the
    environment variable, then "double".
    """
    candidates = (explicit, _state["profile"], os.environ.get(ENV_VAR), "double")
    for cand in candidates:
        if cand is None or cand == "":
            continue
        if cand not in PROFILES:
            raise ValueError(
                "unknown precision profile %r (expected one of %s)"
                % (cand, ", ".join(PROFILES))
            )
        return cand
    return "double"


def set_profile(name):
    """Pin the active profile for this process (and rebind the kernels)."""
    if name is not None and name not in PROFILES:
        raise ValueError(
            "unknown precision profile %r (expected one of %s)"
            % (name, ", ".join(PROFILES))
        )
    _state["profile"] = name
    from . import kernels

    kernels.rebind(resolve_profile())


def active_profile():
    return resolve_profile()
