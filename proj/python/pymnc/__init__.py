"""Multi-normal cone calculus for rational polyhedral data.

Thin dict-friendly wrappers over the _pymnc extension. Every geometric
object travels as a JSON-compatible dict; rationals are exact "p/q"
strings.
"""

import json as _json

from _pymnc import (  # noqa: F401
    InputError,
    InternalConsistencyError,
    ResourceError,
)
import _pymnc as _core


def _in(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def _out(s):
    return _json.loads(s)


def _strs(vec):
    return [str(x) for x in vec]


def validate_family(family):
    return _out(_core.validate_family(_in(family)))


def derive_family(family):
    return _out(_core.derive_family(_in(family)))


def restrict_family(family, K):
    return _out(_core.restrict_family(_in(family), list(K)))


def scheme(family, dual=False):
    return _out(_core.scheme(_in(family), dual))


def apply_scheme(s, x, t):
    return _core.apply_scheme(_in(s), _strs(x), _strs(t))


def cone_hv(c):
    return _out(_core.cone_hv(_in(c)))


def cone_polar(c):
    return _out(_core.cone_polar(_in(c)))


def cone_antipode(c):
    return _out(_core.cone_antipode(_in(c)))


def cone_sum(cones):
    return _out(_core.cone_sum([_in(c) for c in cones]))


def cone_intersect(a, b):
    return _out(_core.cone_intersect(_in(a), _in(b)))


def cone_subset(a, b):
    return _core.cone_subset(_in(a), _in(b))


def cone_member(c, x):
    return _core.cone_member(_in(c), _strs(x))


def cone_dim(c):
    return _core.cone_dim(_in(c))


def cone_proper_wrt(c, xi):
    return _core.cone_proper_wrt(_in(c), _strs(xi))


def mnc_member(scheme_or_family, z, point, dual=False):
    return _out(_core.mnc_member(_in(scheme_or_family), _in(z), _strs(point), dual))


def mnc_describe(scheme_or_family, z, dual=False):
    return _out(_core.mnc_describe(_in(scheme_or_family), _in(z), dual))


def oracle_member(scheme_or_family, z, point, **kw):
    return _core.oracle_member(_in(scheme_or_family), _in(z), _strs(point),
                               kw.get("base", 2), kw.get("steps", 20),
                               _strs(kw.get("eps", [])), kw.get("randomize", True),
                               kw.get("seed", 0))


def verify_membership(scheme_or_family, z, point, cert):
    return _core.verify_membership(_in(scheme_or_family), _in(z), _strs(point), _in(cert))


def verify_separation(scheme_or_family, z, cert):
    return _core.verify_separation(_in(scheme_or_family), _in(z), _in(cert))


def gamma_cone(family, k, cov):
    return _out(_core.gamma_cone(_in(family), k, _strs(cov)))


def g_ladder(family, cov, m):
    return _out(_core.g_ladder(_in(family), _strs(cov), m))


def multicone(family, direction, m):
    return _out(_core.multicone(_in(family), _strs(direction), m))


def enclose(family, cov, m):
    return _out(_core.enclose(_in(family), _strs(cov), m))


def check_g_condition(family, cov, g):
    return _core.check_g_condition(_in(family), _strs(cov), _in(g))


def degree_general(family, split, cov):
    return _out(_core.degree_general(_in(family), _in(split), _strs(cov)))


def degree_complex(family, cov):
    return _out(_core.degree_complex(_in(family), _strs(cov)))


def ss_estimate(family, conic):
    return _out(_core.ss_estimate(_in(family), _in(conic)))


def support_bound(family, conic):
    return _out(_core.support_bound(_in(family), _in(conic)))


def seq_witness(family, conic, point):
    return _out(_core.seq_witness(_in(family), _in(conic), _strs(point)))


def noncharacteristic_check(family, conic):
    return _out(_core.noncharacteristic_check(_in(family), _in(conic)))


def iota_sharp(nx, ny, a):
    return _out(_core.iota_sharp(nx, ny, _in(a)))


def hyperbolicity_check(nx, ny, n_coords, ch):
    return _core.hyperbolicity_check(nx, ny, list(n_coords), _in(ch))


def stalk_limit(family, cov, w, m_max=4):
    return _out(_core.stalk_limit(_in(family), _strs(cov), _in(w), m_max))


def compare_families(family, cov, w, m_max=4):
    return _out(_core.compare_families(_in(family), _strs(cov), _in(w), m_max))


def run_fixtures(fixture_dir, filter="", seed=0):
    return _out(_core.run_fixtures(fixture_dir, filter, seed))
