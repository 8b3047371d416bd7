#include "vcmbench/codec/external_codec.hpp"

#include <charconv>

#include "vcmbench/error.hpp"
#include "vcmbench/io.hpp"
#include "vcmbench/process.hpp"

namespace vcmbench {

namespace {

std::string format_fps(double fps) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, fps);
  return std::string(buf, end);
}

void run_checked(const std::string& command, const char* stage) {
  const CommandResult r = run_shell(command);
  if (r.exit_code != 0) {
    std::string diag = r.stderr_text;
    if (diag.size() > 4000) diag = diag.substr(diag.size() - 4000);
    fail(ErrorKind::kAdapter, std::string("external ") + stage + " command exited with " +
                                  std::to_string(r.exit_code) + ": " + diag);
  }
}

}  // namespace

void ExternalCodecConfig::validate() const {
  if (encode_cmd.empty() || decode_cmd.empty()) {
    fail(ErrorKind::kValidation, "external codec needs encode_cmd and decode_cmd");
  }
}

ExternalCodec::ExternalCodec(ExternalCodecConfig config) : config_(std::move(config)) {
  config_.validate();
}

std::string ExternalCodec::render(const std::string& templ, const std::string& input,
                                  const std::string& output, const CodecParams& params,
                                  const StreamInfo& info) const {
  return render_template(templ, {{"input", input},
                                 {"output", output},
                                 {"qp", std::to_string(params.qp)},
                                 {"width", std::to_string(info.geometry.width)},
                                 {"height", std::to_string(info.geometry.height)},
                                 {"fps", format_fps(info.fps)},
                                 {"frames", std::to_string(info.frame_count)},
                                 {"bitdepth", std::to_string(info.geometry.bit_depth)}});
}

std::vector<std::uint8_t> ExternalCodec::encode(std::span<const PlanarFrame> frames,
                                                const CodecParams& params,
                                                const StreamInfo& info) {
  params.validate();
  const FrameGeometry g = common_geometry(frames);
  if (config_.input_format && *config_.input_format != g.chroma) {
    fail(ErrorKind::kValidation, "external codec input_format does not match frame chroma");
  }
  StreamInfo actual = info;
  actual.geometry = g;
  actual.frame_count = static_cast<int>(frames.size());

  TempDir dir("vcmbench-ext");
  const auto input = dir.path() / "input.yuv";
  const auto output = dir.path() / "stream.bin";
  write_file_bytes(input, write_raw_sequence(frames));
  run_checked(render(config_.encode_cmd, input.string(), output.string(), params, actual),
              "encode");
  std::error_code ec;
  if (!std::filesystem::exists(output, ec)) {
    fail(ErrorKind::kAdapter, "external encoder produced no output file");
  }
  return read_file_bytes(output);
}

std::vector<PlanarFrame> ExternalCodec::decode(std::span<const std::uint8_t> stream,
                                               const StreamInfo& info) {
  TempDir dir("vcmbench-ext");
  const auto input = dir.path() / "stream.bin";
  const auto output = dir.path() / "decoded.yuv";
  write_file_bytes(input, stream);
  CodecParams params;
  params.qp = info.qp;
  run_checked(render(config_.decode_cmd, input.string(), output.string(), params, info),
              "decode");
  std::error_code ec;
  if (!std::filesystem::exists(output, ec)) {
    fail(ErrorKind::kAdapter, "external decoder produced no output file");
  }
  const auto raw = read_file_bytes(output);
  const std::size_t frame_bytes = raw_frame_bytes(info.geometry);
  if (raw.size() != frame_bytes * static_cast<std::size_t>(info.frame_count)) {
    fail(ErrorKind::kValidation,
         "external decoder output is " + std::to_string(raw.size()) + " bytes, expected " +
             std::to_string(info.frame_count) + " frames of " + std::to_string(frame_bytes));
  }
  return read_raw_sequence(raw, info.geometry);
}

}  // namespace vcmbench
