"""Minimum-potential-energy variational quantum solver for the Poisson equation."""

from .classical import ClassicalSolution, SolverError, fidelity, solve, trace_distance
from .cost import (BaselineCostReport, CostReport, SingularOperatorError, baseline_cost,
                   cost, cost_from_state, cross_expectation, denominator, expectation,
                   measured_circuit_count, numerator_hadamard, numerator_overlap)
from .gradient import (GradientReport, finite_difference_gradient, grad_cost,
                       grad_cost_parameter_shift, grad_denominator, grad_numerator,
                       shifted_state, term_gradient)
from .operators import (DEFAULT_EPSILON, BoundaryCondition, Mesh2D, ObservableTerm,
                        PoissonOperator, apply_shift, assemble_fem_2d_dense, build_fdm_kron,
                        build_fem_2d, build_matrix, decompose, fem_element_matrix,
                        operator_from_json, operator_to_json, reassemble_dense)
from .optimize import (GradNorm, OptimizationConfig, OptimizationTrace, PoissonProblem,
                       TraceDistance, TrialsResult, make_problem, minimize, run_trials)
from .resources import (ComplexityExpression, ResourceReport, ShiftResourceCounts,
                        StatePrepDepth, ansatz_depth, count_baseline_circuits,
                        count_cost_circuits, count_gradient_circuits,
                        count_shift_resources, resource_report)
from .sampling import (MsePrediction, ShotEstimate, UnstableEstimateError, ancilla_x_term,
                       derive_seed, predict_mse, sample_cost, sample_cost_estimates,
                       sample_term, sampled_gradient, term_shot_moments)
from .states import (AnsatzCircuit, CustomSource, Statevector, StepFunctionSource,
                     apply_cnot, apply_cz, apply_h, apply_mcx, apply_ry, apply_x,
                     prepare_ansatz_state, prepare_source_state, prepare_superposition_state)

__version__ = "0.1.0"
