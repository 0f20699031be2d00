#pragma once

#include "hesse/flow.hpp"
#include "hesse/report.hpp"
#include "hesse/structure.hpp"

namespace hesse {

Json to_json(const Eigen::VectorXd& v);
Json to_json(const Eigen::MatrixXd& m);  // row-major nested arrays
Json to_json(const Tensor& t);           // {rank, dimension, variance, values (row-major)}

// Field id, point, jet order and every tensor of the inventory.
Json to_json(const StructurePoint& sp);

// {mode, dimension, shape, spacing, origin, periodic, time, components, state}.
Json snapshot(const MetricGrid& grid);

}  // namespace hesse
