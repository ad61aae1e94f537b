#pragma once

#include "qaoafold/common.hpp"
#include "qaoafold/rna_model.hpp"
#include "qaoafold/qubo.hpp"
#include "qaoafold/simulator.hpp"
#include "qaoafold/interpolation.hpp"
#include "qaoafold/optimizer.hpp"
#include "qaoafold/qaoa.hpp"
#include "qaoafold/evaluation.hpp"
#include "qaoafold/benchmark.hpp"
#include "qaoafold/io.hpp"
