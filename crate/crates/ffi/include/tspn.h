#ifndef TSPN_H
#define TSPN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every fallible call.
 */
typedef enum TspnStatus {
  TSPN_STATUS_OK = 0,
  TSPN_STATUS_NULL_POINTER = 1,
  TSPN_STATUS_INVALID_UTF8 = 2,
  TSPN_STATUS_INVALID_ARGUMENT = 3,
  TSPN_STATUS_FORMAT = 4,
  TSPN_STATUS_IO = 5,
  TSPN_STATUS_SIZE_LIMIT = 6,
  TSPN_STATUS_CAPACITY = 7,
  TSPN_STATUS_INSUFFICIENT_COVERAGE = 8,
  TSPN_STATUS_DEGENERATE_DETECTION = 9,
  TSPN_STATUS_UNKNOWN_OBJECT = 10,
  TSPN_STATUS_BUFFER_TOO_SMALL = 11,
  TSPN_STATUS_PANIC = 12,
} TspnStatus;

/*
 A validated scene.
 */
typedef struct TspnScene TspnScene;

/*
 A planned trajectory.
 */
typedef struct TspnTour TspnTour;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null if none.
 The pointer stays valid until the next failing call on the thread.
 */
const char *tspn_last_error_message(void);

/*
 Parses a scene from its JSON text.

 # Safety
 `json` must be a nul-terminated string; `out` must be writable.
 */
enum TspnStatus tspn_scene_from_json(const char *json, struct TspnScene **out);

/*
 Generates a random scene of spheres in a cube.

 # Safety
 `out` must be writable.
 */
enum TspnStatus tspn_scene_generate(size_t n_objects,
                                    double cube_edge,
                                    double d_min,
                                    double d_max,
                                    bool disjoint,
                                    double overlap_rate,
                                    uint64_t seed,
                                    struct TspnScene **out);

/*
 Number of objects, or 0 for a null handle.

 # Safety
 `scene` must be null or a live handle.
 */
size_t tspn_scene_len(const struct TspnScene *scene);

/*
 Serializes a scene to JSON; free the string with `tspn_string_free`.

 # Safety
 `scene` must be a live handle; `out` must be writable.
 */
enum TspnStatus tspn_scene_to_json(const struct TspnScene *scene, char **out);

/*
 # Safety
 `scene` must be null or a handle not yet freed.
 */
void tspn_scene_free(struct TspnScene *scene);

/*
 Center-visit tour over a disjoint scene. `start` points to three
 doubles, or is null for the origin.

 # Safety
 `scene` must be a live handle; `start` null or readable for 3 doubles;
 `out` writable.
 */
enum TspnStatus tspn_plan_center_visit(const struct TspnScene *scene,
                                       const double *start,
                                       uint64_t seed,
                                       struct TspnTour **out);

/*
 Tour over a possibly overlapping scene, with detours around kept regions.

 # Safety
 Same contract as `tspn_plan_center_visit`.
 */
enum TspnStatus tspn_plan_nondisjoint(const struct TspnScene *scene,
                                      const double *start,
                                      uint64_t seed,
                                      struct TspnTour **out);

/*
 Alpha-fat sampling baseline with `samples_per_region` boundary samples.

 # Safety
 Same contract as `tspn_plan_center_visit`.
 */
enum TspnStatus tspn_plan_baseline(const struct TspnScene *scene,
                                   const double *start,
                                   size_t samples_per_region,
                                   uint64_t seed,
                                   struct TspnTour **out);

/*
 # Safety
 `tour` must be a live handle; `out` writable.
 */
enum TspnStatus tspn_tour_length(const struct TspnTour *tour, double *out);

/*
 Number of waypoints, or 0 for a null handle.

 # Safety
 `tour` must be null or a live handle.
 */
size_t tspn_tour_waypoint_count(const struct TspnTour *tour);

/*
 Copies waypoints as consecutive `x, y, z` doubles into `buffer`, which
 holds `capacity` doubles (at least three per waypoint).

 # Safety
 `tour` must be a live handle; `buffer` writable for `capacity` doubles.
 */
enum TspnStatus tspn_tour_copy_waypoints(const struct TspnTour *tour,
                                         double *buffer,
                                         size_t capacity);

/*
 Serializes a tour as trajectory JSON; free with `tspn_string_free`.

 # Safety
 `tour` must be a live handle; `out` writable.
 */
enum TspnStatus tspn_tour_to_json(const struct TspnTour *tour, char **out);

/*
 # Safety
 `tour` must be null or a handle not yet freed.
 */
void tspn_tour_free(struct TspnTour *tour);

/*
 # Safety
 `s` must be null or a string returned by this library and not yet freed.
 */
void tspn_string_free(char *s);

/*
 Viewing score of a row-major 8-bit image under a mask of the same size
 (nonzero bytes are object pixels).

 # Safety
 `pixels` and `mask` must be readable for `width * height` bytes; `out`
 writable.
 */
enum TspnStatus tspn_viewing_score(const uint8_t *pixels,
                                   const uint8_t *mask,
                                   size_t width,
                                   size_t height,
                                   double edge_fraction,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TSPN_H */
