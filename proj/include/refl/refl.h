/* C interface to the reflection-group engine. All documents are JSON text. */
#ifndef REFL_REFL_H
#define REFL_REFL_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(REFL_BUILDING_LIBRARY)
#define REFL_API __attribute__((visibility("default")))
#else
#define REFL_API
#endif

typedef enum refl_status {
  REFL_OK = 0,
  REFL_ERR_INPUT = 1,
  REFL_ERR_GEOMETRY = 2,
  REFL_ERR_NON_DISCRETE = 3,
  REFL_ERR_BOUND = 4,
  REFL_ERR_INDEX_BOUND = 5,
  REFL_ERR_UNSUPPORTED = 6,
  REFL_ERR_INTERNAL = 7
} refl_status;

typedef struct refl_options {
  double tol_geo;
  double tol_ang;
  int max_depth;
  int max_chambers;
  int max_index;
  int jobs;
  int max_rank; /* lemma2 suite */
} refl_options;

typedef struct refl_group refl_group;
typedef struct refl_result refl_result;

REFL_API void refl_options_init(refl_options* opts);

/* {"rank": n, "m": [[...]], "weights": [{"i", "j", "c"}]}, 0 = infinity. */
REFL_API refl_status refl_group_parse(const char* json, refl_group** out);
REFL_API void refl_group_free(refl_group* g);
REFL_API int refl_group_rank(const refl_group* g);

/* Signature, type and named components. Text: one summary line plus diagram art. */
REFL_API refl_status refl_classify(const refl_group* g, const refl_options* opts, refl_result** out);
/* Verdict document for {"reflections": [{"word": [...]} | {"root": [...]}]}.
   On REFL_ERR_INDEX_BOUND a verdict with index "exceeded bound" is still returned. */
REFL_API refl_status refl_subgroup(const refl_group* g, const char* subgroup_json, const refl_options* opts,
                                   refl_result** out);
/* Reflection subgroups of g within the bounds, with their verdicts. */
REFL_API refl_status refl_enumerate(const refl_group* g, const refl_options* opts, refl_result** out);
/* suite: theorem, lemma1, lemma2, lemma3, remark2 or all. */
REFL_API refl_status refl_verify(const char* suite, const refl_options* opts, refl_result** out);
/* render_json: {"model", "depth", "chamber_stroke", "mirror_stroke", "highlight"}; may be NULL.
   Text holds the SVG. */
REFL_API refl_status refl_render(const refl_group* g, const char* render_json, const refl_options* opts,
                                 refl_result** out);
/* Halfspace list or {"triangle": [p, q, r]}; echoes the resolved halfspaces. */
REFL_API refl_status refl_polytope(const char* json, const refl_options* opts, refl_result** out);

REFL_API const char* refl_result_json(const refl_result* r);
REFL_API const char* refl_result_text(const refl_result* r);
/* 1 when the result is a pass: suites without violations, verdicts that hold
   or have infinite covolume. */
REFL_API int refl_result_pass(const refl_result* r);
REFL_API void refl_result_free(refl_result* r);

/* Message of the last failed call on this thread; "" when none. */
REFL_API const char* refl_last_error(void);
REFL_API const char* refl_status_name(refl_status s);

#ifdef __cplusplus
}
#endif

#endif
