from mcx_tools._src.experiments.runner import (
    ExperimentResult,
    replay_row,
    run_experiment,
)
from mcx_tools._src.experiments.spec import (
    ExperimentKind,
    ExperimentSpec,
    load_experiment_spec,
)
from mcx_tools._src.experiments.summary import summarize
from mcx_tools._src.explorer.acbfs import acbfs
from mcx_tools._src.explorer.bfs import bfs
from mcx_tools._src.explorer.common import DueDiligenceError
from mcx_tools._src.explorer.config import (
    SearchAlgorithm,
    SearchConfig,
)
from mcx_tools._src.explorer.graph import (
    AutomatonGraph,
    explore_graph,
)
from mcx_tools._src.explorer.report import (
    ExplorationReport,
    Outcome,
    WitnessStep,
    replay_witness,
)
from mcx_tools._src.explorer.search import explore
from mcx_tools._src.generator.generate import (
    GenParams,
    GenReport,
    generate,
    write_report,
)
from mcx_tools._src.generator.grid import grid_range
from mcx_tools._src.generator.simplex import (
    InfeasibleBoundsError,
    sample_bounded_simplex,
)
from mcx_tools._src.model.feasibility import (
    DueDiligence,
    due_diligence,
)
from mcx_tools._src.model.io import (
    TaskSetFormatError,
    dump_taskset,
    load_taskset,
    parse_taskset,
)
from mcx_tools._src.model.tasks import (
    Criticality,
    Task,
    TaskSet,
    UtilizationSummary,
    utilization_summary,
    validate,
)
from mcx_tools._src.oracles.demand import (
    dbf,
    df,
    nj,
)
from mcx_tools._src.oracles.laxity import (
    laxity,
    worst_laxity,
)
from mcx_tools._src.oracles.oracles import (
    OracleKind,
    OracleResult,
    OracleSet,
    Verdict,
    evaluate,
)
from mcx_tools._src.schedulers.base import (
    FunctionScheduler,
    Scheduler,
    SchedulerKind,
)
from mcx_tools._src.schedulers.edf import (
    EdfVdConfig,
    edf,
    edf_vd,
    edf_vd_sufficient_test,
)
from mcx_tools._src.schedulers.factory import build_scheduler
from mcx_tools._src.schedulers.lwlf import lwlf
from mcx_tools._src.semantics.automaton import Automaton
from mcx_tools._src.semantics.render import (
    parse_state,
    render_state,
)
from mcx_tools._src.semantics.state import (
    SystemState,
    initial_state,
)
from mcx_tools._src.semantics.transitions import (
    InvalidTransitionError,
    StepLabel,
    TransitionLabel,
    intermediary_steps,
    release,
    run,
    signal,
    successors,
)
from mcx_tools._src.simulation.antichain import (
    Antichain,
    max_of,
)
from mcx_tools._src.simulation.preorder import simulates
from mcx_tools._src.utils.time import parse_duration
