#pragma once

#include "pac/audit.hpp"
#include "pac/consensus.hpp"
#include "pac/funcext.hpp"
#include "pac/network.hpp"
#include "pac/protocol.hpp"
#include "pac/rng.hpp"
#include "pac/scenario.hpp"
#include "pac/scheduler.hpp"
#include "pac/serialize.hpp"
#include "pac/stats.hpp"
#include "pac/ufrac.hpp"
