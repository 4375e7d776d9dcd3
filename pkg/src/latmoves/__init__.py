"""Insertion and deletion moves on lattice polytopes, computed exactly."""
from .errors import *  # noqa: F401,F403
from .kernel import Polytope, canonical_key, contains_point, convex_hull, polytope_from_key
from .moves import (Move, MoveTrace, apply_delete, apply_insert, apply_move,
                    can_delete, can_insert, deletable_vertices, insertable_cells_2d,
                    insertable_points, neighbors_in_box, vertex_cone)
from .constructions import (cartesian_product, corner_simplex, empty_simplex,
                            pn_polygon, saturating_polytope, unit_cube)
from .paths import (connect_convex_position, find_simplex_insertion,
                    simplex_frames, simplex_to_corner_path)
from .polygons import (flatten_pentagon, is_flat, is_oblique, make_strongly_flat,
                       pentagon_pipeline, shear_to_oblique)
from .graph import (MoveGraph, bfs_closure, bfs_distance, build_graph,
                    connected_components, enumerate_polytopes)
from .sampler import run_chain, tv_distance_to_uniform

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
