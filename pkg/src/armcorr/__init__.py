"""armcorr: dual planar-arm sensorimotor simulation and correlation analysis.

Simulates two velocity-controlled 3-link arms babbling around a pushable,
occludable object, records the sensorimotor trace, computes the four
pairwise correlation panels over its channels, and segments the sensory
points into entities labeled self / other-active / passive.
"""

__version__ = "0.1.0"

from .config import (
    AnalysisConfig,
    BabblePolicy,
    ConfigError,
    DEFAULT_CONFIG,
    RunConfig,
    WorldConfig,
    config_hash,
    load_config,
    save_config,
)
from .world import (
    ArmState,
    ContactEvent,
    MotorCommand,
    Observation,
    ObjectState,
    WorldState,
    build_world,
    forward_kinematics,
    observe,
    step,
)
from .babble import BabbleStream, sample_commands
from .trace import DerivedChannels, TraceFormatError, TraceLog, derive_channels
from .correlation import (
    CorrelationMatrix,
    build_all_panels,
    build_panel,
    pearson,
    read_panel,
    write_panel,
)
from .agency import (
    AgencyLabel,
    AgencyParams,
    ControllabilityGraph,
    EntityClustering,
    MirrorScore,
    ProximoDistalResult,
    classify_autonomy,
    cluster_entities,
    controllability_graph,
    mirroring_score,
    proximodistal_check,
)
from .pipeline import (
    RunManifest,
    analyze_log,
    run_simulation,
    segment_run,
    stage_analyze,
    stage_segment,
    stage_simulate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
