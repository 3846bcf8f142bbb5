#pragma once

#include <string>
#include <vector>

#include "evblur/deblur.hpp"
#include "evblur/events.hpp"
#include "evblur/frame.hpp"
#include "evblur/metrics.hpp"
#include "evblur/motion.hpp"

namespace evblur {

// Event CSV: header "t_us,x,y,p", one event per line, decimal integers,
// p in {1,-1}. The CSV carries no sensor metadata, so reading infers the
// raster size and window from the events themselves.
void write_events_csv(const std::string& path, const EventStream& s);
EventStream read_events_csv(const std::string& path);

// Event binary: magic "EVT1", little-endian u32 width, u32 height,
// u64 t_start, u64 t_end, u64 count, then count records of
// (u64 t, u16 x, u16 y, i8 p, 3 zero pad bytes).
void write_events_bin(const std::string& path, const EventStream& s);
EventStream read_events_bin(const std::string& path);

// Dispatch on extension: ".csv" text, anything else binary.
void write_events(const std::string& path, const EventStream& s);
EventStream read_events(const std::string& path);

// 8-bit binary portable graymap; values quantized as round(v*255).
void write_pgm(const std::string& path, const Frame& f);
Frame read_pgm(const std::string& path);

// Lossless float raster: "PF-GRAY\n<width> <height>\n" then width*height
// little-endian f32, row-major.
void write_pfgray(const std::string& path, const Frame& f);
Frame read_pfgray(const std::string& path);

// Dispatch on extension: ".pgm" quantized, anything else PF-GRAY.
void write_frame(const std::string& path, const Frame& f);
Frame read_frame(const std::string& path);

// Flow file: magic "FLO-GRAY", little-endian u32 width, u32 height, then
// width*height (u,v) pairs of f32, row-major.
void write_flow(const std::string& path, const FlowField& f);
FlowField read_flow(const std::string& path);

// Frame sequences live as numbered rasters plus a manifest text file with
// one "<filename> <timestamp_us>" line per frame; filenames are resolved
// relative to the manifest. Returns the manifest path.
std::string write_sequence(const std::string& dir, const std::string& prefix,
                           const FrameSequence& seq, bool float_format);
FrameSequence read_sequence(const std::string& manifest_path);

// Loss trace CSV: "iter,total,blur,photo".
void write_trace_csv(const std::string& path, const SolverReport& report);

// Evaluation CSV: "frame,psnr,ssim" rows plus "mean" and "single" summary lines.
void write_eval_csv(const std::string& path, const EvalReport& report);

}  // namespace evblur
