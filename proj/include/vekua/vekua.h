#ifndef VEKUA_VEKUA_H
#define VEKUA_VEKUA_H

/* C interface to the vekua library: experiment configs and runs. */

#include <stddef.h>

#if defined(VEKUA_BUILDING_LIBRARY)
#define VK_API __attribute__((visibility("default")))
#else
#define VK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vk_status {
  VK_OK = 0,
  VK_ERR_INVALID_ARGUMENT = 1,
  VK_ERR_INVALID_DOMAIN,
  VK_ERR_SPACING_TOO_COARSE,
  VK_ERR_EMPTY_INTERSECTION,
  VK_ERR_DOMAIN_SINGULARITY,
  VK_ERR_NU_OUT_OF_RANGE,
  VK_ERR_SIGMA_NONPOSITIVE,
  VK_ERR_MISSING_NEIGHBOR,
  VK_ERR_TARGET_OUTSIDE_DOMAIN,
  VK_ERR_EMPTY_DOMAIN,
  VK_ERR_NO_CONVERGENCE,
  VK_ERR_SINGULAR_WEIGHT,
  VK_ERR_NOT_HOLOMORPHIC,
  VK_ERR_RADIUS_OUT_OF_RANGE,
  VK_ERR_INTERPOLATION_OUTSIDE_GRID,
  VK_ERR_DOMAIN_NOT_IN_RIGHT_HALF_PLANE,
  VK_ERR_DISC_INTERSECTS_DOMAIN,
  VK_ERR_BRANCH_CUT_CROSSES_DOMAIN,
  VK_ERR_IMAGE_OUTSIDE_DOMAIN,
  VK_ERR_NO_DAMPERS_FOR_UNBOUNDED_DOMAIN,
  VK_ERR_STRIP_NOT_COVERED,
  VK_ERR_ZERO_MODULUS_LINE,
  VK_ERR_NONPOSITIVE_BOUNDARY_MAX,
  VK_ERR_CONFIG_INVALID,
  VK_ERR_IO,
  VK_ERR_INTERNAL = 99
} vk_status;

typedef struct vk_config vk_config;
typedef struct vk_report vk_report;

/* Message of the last failing call on this thread; never NULL. */
VK_API const char* vk_last_error(void);
VK_API const char* vk_status_name(vk_status status);
VK_API const char* vk_version(void);

VK_API size_t vk_subcommand_count(void);
VK_API const char* vk_subcommand_name(size_t index);

/* Config from JSON text ("{}" gives the defaults). */
VK_API vk_status vk_config_parse(const char* json, vk_config** out);
/* Set one field from JSON text, e.g. key "spacing", value "0.01" or key "weight", value "\"zero\"". */
VK_API vk_status vk_config_set(vk_config* config, const char* key, const char* json_value);
/* Canonical JSON of the config; release with vk_string_free. */
VK_API vk_status vk_config_to_json(const vk_config* config, char** out);
VK_API void vk_config_free(vk_config* config);
VK_API void vk_string_free(char* text);

/* Run a subcommand. With out_dir non-NULL, report.json and any extra files are
   written there. Errors inside the run are reported through the exit code
   (2) and the report body; the status covers only API misuse and I/O. */
VK_API vk_status vk_run(const char* subcommand, const vk_config* config, const char* out_dir, vk_report** out);
VK_API int vk_report_exit_code(const vk_report* report);
/* Deterministic report body as JSON text; owned by the report. */
VK_API const char* vk_report_body(const vk_report* report);
VK_API size_t vk_report_file_count(const vk_report* report);
VK_API const char* vk_report_file_name(const vk_report* report, size_t index);
VK_API const char* vk_report_file_contents(const vk_report* report, size_t index);
VK_API void vk_report_free(vk_report* report);

#ifdef __cplusplus
}
#endif

#endif
