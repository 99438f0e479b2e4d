#ifndef CONGESTION_LAB_CONGESTION_LAB_HPP
#define CONGESTION_LAB_CONGESTION_LAB_HPP

#include "congestion_lab/cc/controller.hpp"
#include "congestion_lab/metrics/metrics.hpp"
#include "congestion_lab/metrics/summary.hpp"
#include "congestion_lab/net/link.hpp"
#include "congestion_lab/net/packet.hpp"
#include "congestion_lab/net/port_queue.hpp"
#include "congestion_lab/scenario/builtins.hpp"
#include "congestion_lab/scenario/format.hpp"
#include "congestion_lab/scenario/scenario.hpp"
#include "congestion_lab/sim/rng.hpp"
#include "congestion_lab/sim/simulator.hpp"
#include "congestion_lab/simulation.hpp"
#include "congestion_lab/sweep.hpp"
#include "congestion_lab/transport/receiver.hpp"
#include "congestion_lab/transport/rtt_estimator.hpp"
#include "congestion_lab/transport/sender.hpp"
#include "congestion_lab/transport/token_bucket.hpp"

#endif  // CONGESTION_LAB_CONGESTION_LAB_HPP
