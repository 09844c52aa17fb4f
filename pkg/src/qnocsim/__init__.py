"""Deterministic simulator for teleportation-based interconnects on 2D
meshes of quantum cores: hop-by-hop versus two-way teleportation routing,
end-to-end communication delay, and expanded circuit depth."""

from .benchgen import CrMode, GenerationError, SynthSpec, gen_cuccaro, gen_mcmt, gen_qft, gen_quantum_volume, gen_synthetic
from .circuit import Circuit, Gate, ParseError, depth, layerize, parse_circuit, serialize_circuit
from .engine import SimConfig, SimReport, StrategyComparison, audit_resources, compare, run
from .placement import CapacityError, PlacementMap
from .protocol import ProtocolError, TeleportOutcome, TimingConfig, entanglement_attempts, teleport_hop
from .strategy import CommPlan, plan, plan_hh, plan_twt, rounds_saved
from .topology import MeshTopology

__all__ = [
    "CapacityError",
    "Circuit",
    "CommPlan",
    "CrMode",
    "Gate",
    "GenerationError",
    "MeshTopology",
    "ParseError",
    "PlacementMap",
    "ProtocolError",
    "SimConfig",
    "SimReport",
    "StrategyComparison",
    "SynthSpec",
    "TeleportOutcome",
    "TimingConfig",
    "audit_resources",
    "compare",
    "depth",
    "entanglement_attempts",
    "gen_cuccaro",
    "gen_mcmt",
    "gen_qft",
    "gen_quantum_volume",
    "gen_synthetic",
    "layerize",
    "parse_circuit",
    "plan",
    "plan_hh",
    "plan_twt",
    "rounds_saved",
    "run",
    "serialize_circuit",
    "teleport_hop",
]
