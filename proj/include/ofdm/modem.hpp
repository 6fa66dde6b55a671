#pragma once

#include "ofdm/modem/coding.hpp"
#include "ofdm/modem/constellation.hpp"
#include "ofdm/modem/ofdm_symbol.hpp"
#include "ofdm/modem/subcarrier_plan.hpp"
#include "ofdm/modem/tx_filter.hpp"
