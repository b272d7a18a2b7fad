#ifndef ABELFIELD_H
#define ABELFIELD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AbelStatus {
  ABEL_STATUS_OK = 0,
  ABEL_STATUS_NULL_POINTER = 1,
  ABEL_STATUS_INVALID_UTF8 = 2,
  ABEL_STATUS_INVALID_INPUT = 3,
  ABEL_STATUS_SCHEMA = 4,
  ABEL_STATUS_ORACLE_CORRUPTION = 5,
  ABEL_STATUS_OVERFLOW = 6,
  ABEL_STATUS_PANIC = 7,
} AbelStatus;

typedef enum AbelVerdict {
  ABEL_VERDICT_MATCH = 0,
  ABEL_VERDICT_MISMATCH = 1,
  ABEL_VERDICT_UNCERTIFIED = 2,
} AbelVerdict;

/**
 * Oracle output for one field.
 */
typedef struct AbelDump AbelDump;

/**
 * A field `Q(zeta_n)^H`.
 */
typedef struct AbelField AbelField;

/**
 * Result of a reconstruction.
 */
typedef struct AbelReport AbelReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library.
 */
const char *abel_last_error_message(void);

/**
 * Frees a string returned by this library.
 */
void abel_string_free(char *s);

/**
 * `Q(zeta_modulus)^H` with `H` generated by `generators[0..len]`.
 */
enum AbelStatus abel_field_new(uint64_t modulus,
                               const int64_t *generators,
                               uintptr_t len,
                               struct AbelField **out);

/**
 * Parses `{"modulus": n, "subgroup_generators": [...]}`.
 */
enum AbelStatus abel_field_from_json(const char *json, struct AbelField **out);

enum AbelStatus abel_field_to_json(const struct AbelField *field, char **out);

void abel_field_free(struct AbelField *field);

enum AbelStatus abel_field_conductor(const struct AbelField *field, uint64_t *out);

enum AbelStatus abel_field_degree(const struct AbelField *field, uint64_t *out);

/**
 * `|disc K|` in decimal.
 */
enum AbelStatus abel_field_discriminant(const struct AbelField *field, char **out);

/**
 * Local data at every prime up to `bound`.
 */
enum AbelStatus abel_oracle_dump(const struct AbelField *field,
                                 uint64_t bound,
                                 struct AbelDump **out);

enum AbelStatus abel_dump_from_json(const char *json, struct AbelDump **out);

enum AbelStatus abel_dump_to_json(const struct AbelDump *dump, char **out);

void abel_dump_free(struct AbelDump *dump);

/**
 * Rebuilds the field from the dump alone.
 */
enum AbelStatus abel_reconstruct(const struct AbelDump *dump, struct AbelReport **out);

enum AbelStatus abel_report_n_g(const struct AbelReport *report, uint64_t *out);

enum AbelStatus abel_report_certified(const struct AbelReport *report, bool *out);

/**
 * A new handle to the rebuilt field.
 */
enum AbelStatus abel_report_field(const struct AbelReport *report, struct AbelField **out);

enum AbelStatus abel_report_to_json(const struct AbelReport *report, char **out);

void abel_report_free(struct AbelReport *report);

/**
 * Whether two handles describe the same field.
 */
enum AbelStatus abel_field_equal(const struct AbelField *a, const struct AbelField *b, bool *out);

/**
 * Dump, reload, rebuild and compare in one call.
 */
enum AbelStatus abel_roundtrip(const struct AbelField *field,
                               uint64_t bound,
                               enum AbelVerdict *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ABELFIELD_H */
