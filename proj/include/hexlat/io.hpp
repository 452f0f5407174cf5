#pragma once

#include <string>

namespace hexlat {

/// Format a double with 17 significant digits ('.' decimal, no locale).
std::string fmt_g17(double v);

/// Number of worker threads: explicit setting, else HEXLAT_THREADS, else 1.
int thread_count();
void set_thread_count(int n);

}  // namespace hexlat
