"""Finite-model engine and brute-force theorem checker for primal-proximity spaces."""

from .instance import Instance
from .primal import Primal, check_primal, enumerate_primals, make_primal, mk_empty, mk_maximal, mk_principal
from .proximity import ProximityRelation, build, check_ef_proximity, check_primal_proximity, explicit
from .sets import SubsetFamily, Universe
from .spacefile import SpaceFile, SpaceFileError, load, parse
from .topology import Topology, check_topology, enumerate_topologies, make_topology
from .verdict import Status, Verdict

__version__ = "0.1.0"

__all__ = [
    "Instance",
    "Primal",
    "ProximityRelation",
    "SpaceFile",
    "SpaceFileError",
    "Status",
    "SubsetFamily",
    "Topology",
    "Universe",
    "Verdict",
    "build",
    "check_ef_proximity",
    "check_primal",
    "check_primal_proximity",
    "check_topology",
    "enumerate_primals",
    "enumerate_topologies",
    "explicit",
    "load",
    "make_primal",
    "make_topology",
    "mk_empty",
    "mk_maximal",
    "mk_principal",
    "parse",
]
