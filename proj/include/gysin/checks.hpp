#pragma once

#include "gysin/json_io.hpp"

namespace gysin {

using CheckRow = SelfcheckReport::Row;

// Structural suite
CheckRow check_ring_axioms();
CheckRow check_projection_formula_all();
CheckRow check_splitting_independence();
CheckRow check_restriction_functoriality();
CheckRow check_euler_class();
CheckRow check_os_structure();
CheckRow check_nbc_vs_mobius();
CheckRow check_model_structure(long long cap);

// Oracle-backed suites
CheckRow check_bos_polynomials();
CheckRow check_deletion_restriction();
CheckRow check_functorial_composition();
CheckRow check_torus_betti();
CheckRow check_route_consistency();
CheckRow check_config_space_tables(long long cap);
CheckRow check_euler_chromatic(long long cap);
CheckRow check_blowup_demo(long long cap);
CheckRow check_alpha_beta_all(long long cap);
CheckRow check_negative_control();

SelfcheckReport run_selfcheck(long long cap);

// Shared instance zoo (central + graphic arrangements, l <= 8).
std::vector<std::pair<std::string, Arrangement>> arrangement_zoo();
std::vector<std::vector<Rational>> braid_normals(int n);
std::vector<std::vector<Rational>> boolean_normals(int n);
Graph complete_graph(int n);

}  // namespace gysin
