#include "ncmatch/ncmatch.h"

#include "ncmatch/adversaries.hpp"
#include "ncmatch/campaigns.hpp"
#include "ncmatch/error.hpp"
#include "ncmatch/io.hpp"
#include "ncmatch/online_engine.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

struct ncm_instance {
  ncm::AnnotatedInstance ai;
};

struct ncm_result {
  ncm::AnnotatedInstance ai;
  std::string algorithm;
  ncm::SimulationResult sim;
};

namespace {

thread_local std::string last_error;

static_assert(static_cast<int>(ncm::ErrorCode::internal) + 1 == NCM_E_INTERNAL);

ncm_status to_status(ncm::ErrorCode code) { return static_cast<ncm_status>(static_cast<int>(code) + 1); }

template <class F>
ncm_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return NCM_OK;
  } catch (const ncm::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return NCM_E_BAD_INPUT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NCM_E_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return NCM_E_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) ncm::fail(ncm::ErrorCode::bad_input, std::string(what) + " is null");
}

ncm::Json parse_params(const char* text) {
  if (!text || !*text) return ncm::Json::object();
  return ncm::Json::parse(text);
}

}  // namespace

extern "C" {

const char* ncm_version(void) { return "0.1.0"; }

const char* ncm_status_name(ncm_status status) {
  if (status == NCM_OK) return "ok";
  if (status < NCM_OK || status > NCM_E_INTERNAL) return "unknown";
  return ncm::error_code_name(static_cast<ncm::ErrorCode>(static_cast<int>(status) - 1)).data();
}

const char* ncm_last_error(void) { return last_error.c_str(); }

void ncm_string_free(char* s) { std::free(s); }

ncm_status ncm_instance_generate(const char* family, const char* params_json, uint64_t seed, ncm_instance** out) {
  return guarded([&] {
    require(family, "family");
    require(out, "out");
    auto inst = std::make_unique<ncm_instance>();
    inst->ai = ncm::generate_instance(family, parse_params(params_json), seed);
    *out = inst.release();
  });
}

ncm_status ncm_instance_from_json(const char* json_text, ncm_instance** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    auto inst = std::make_unique<ncm_instance>();
    inst->ai = ncm::instance_from_json(ncm::Json::parse(json_text));
    *out = inst.release();
  });
}

ncm_status ncm_instance_load(const char* path, ncm_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto inst = std::make_unique<ncm_instance>();
    inst->ai = ncm::instance_from_json(ncm::Json::parse(ncm::read_text_file(path)));
    *out = inst.release();
  });
}

ncm_status ncm_instance_save(const ncm_instance* inst, const char* path) {
  return guarded([&] {
    require(inst, "instance");
    require(path, "path");
    ncm::write_text_file(path, ncm::instance_to_json(inst->ai).dump(2) + "\n");
  });
}

ncm_status ncm_instance_to_json(const ncm_instance* inst, char** out_json) {
  return guarded([&] {
    require(inst, "instance");
    require(out_json, "out_json");
    *out_json = copy_out(ncm::instance_to_json(inst->ai).dump(2));
  });
}

size_t ncm_instance_point_count(const ncm_instance* inst) { return inst ? inst->ai.instance.points.size() : 0; }

void ncm_instance_free(ncm_instance* inst) { delete inst; }

ncm_status ncm_run(const ncm_instance* inst, const char* algorithm, ncm_result** out) {
  return guarded([&] {
    require(inst, "instance");
    require(algorithm, "algorithm");
    require(out, "out");
    const auto alg = ncm::algorithm_by_name(algorithm);
    if (!alg) ncm::fail(ncm::ErrorCode::bad_input, std::string("unknown algorithm '") + algorithm + "'");
    auto res = std::make_unique<ncm_result>();
    res->ai = inst->ai;
    res->algorithm = algorithm;
    res->sim = ncm::simulate(*alg, res->ai.instance);
    *out = res.release();
  });
}

ncm_status ncm_result_report(const ncm_result* res, char** out_json) {
  return guarded([&] {
    require(res, "result");
    require(out_json, "out_json");
    *out_json = copy_out(ncm::simulation_report(res->ai, res->algorithm, res->sim).dump(2));
  });
}

ncm_status ncm_result_svg(const ncm_result* res, char** out_svg) {
  return guarded([&] {
    require(res, "result");
    require(out_svg, "out_svg");
    *out_svg = copy_out(ncm::render_svg(res->ai.instance, res->sim.matching));
  });
}

size_t ncm_result_matched_points(const ncm_result* res) { return res ? 2 * res->sim.matching.size() : 0; }
size_t ncm_result_bits_read(const ncm_result* res) { return res ? res->sim.bits_read : 0; }
size_t ncm_result_bits_written(const ncm_result* res) { return res ? res->sim.bits_written : 0; }
int ncm_result_is_perfect(const ncm_result* res) { return res && res->sim.report.perfect ? 1 : 0; }

void ncm_result_free(ncm_result* res) { delete res; }

ncm_status ncm_verify(const char* check, const char* params_json, char** out_json, int* passed) {
  return guarded([&] {
    require(check, "check");
    require(out_json, "out_json");
    const ncm::Json report = ncm::run_campaign(check, parse_params(params_json));
    if (passed) *passed = report.at("pass").get<bool>() ? 1 : 0;
    *out_json = copy_out(report.dump(2));
  });
}

ncm_status ncm_codec(const char* op, const char* args_json, char** out_json) {
  return guarded([&] {
    require(op, "op");
    require(out_json, "out_json");
    *out_json = copy_out(ncm::run_codec(op, parse_params(args_json)).dump(2));
  });
}

ncm_status ncm_kl_divergence(double a, double p, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = ncm::kl_divergence(a, p);
  });
}

ncm_status ncm_approx_lb_rate(double alpha, int c, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = ncm::approx_lb_rate(alpha, c);
  });
}

}  // extern "C"
