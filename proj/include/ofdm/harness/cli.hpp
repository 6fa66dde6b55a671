#pragma once

#include <iosfwd>

namespace ofdm::harness {

/// ofdmsim entry point.
///   ofdmsim <psd|papr|ber|cfo|cp|presets> [--config PATH | --preset NAME]
///           [--seed U64] [--out PATH] [--threads N]
/// Exit codes: 0 success, 1 usage/validation error, 2 runtime error.
/// Default thread count comes from OFDMKIT_THREADS, else the hardware
/// concurrency.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ofdm::harness
