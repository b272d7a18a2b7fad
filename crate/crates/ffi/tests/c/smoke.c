#include <stdio.h>
#include <string.h>

#include "abelfield.h"

#define CHECK(call)                                                            \
  do {                                                                         \
    AbelStatus s_ = (call);                                                    \
    if (s_ != ABEL_STATUS_OK) {                                                \
      const char *m_ = abel_last_error_message();                              \
      fprintf(stderr, "%s: status %d: %s\n", #call, (int)s_, m_ ? m_ : "");    \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  const int64_t gens[] = {1, 11};
  AbelField *k = NULL;
  CHECK(abel_field_new(12, gens, 2, &k));

  char *disc = NULL;
  CHECK(abel_field_discriminant(k, &disc));
  if (strcmp(disc, "12") != 0) {
    fprintf(stderr, "disc %s\n", disc);
    return 1;
  }
  abel_string_free(disc);

  AbelDump *d = NULL;
  AbelReport *r = NULL;
  CHECK(abel_oracle_dump(k, 100, &d));
  CHECK(abel_reconstruct(d, &r));
  uint64_t n_g = 0;
  bool certified = false;
  CHECK(abel_report_n_g(r, &n_g));
  CHECK(abel_report_certified(r, &certified));

  AbelVerdict v = ABEL_VERDICT_MISMATCH;
  CHECK(abel_roundtrip(k, 100, &v));

  AbelField *bad = NULL;
  AbelStatus s = abel_field_from_json("{\"modulus\": 4}", &bad);

  printf("n_g=%llu certified=%d verdict=%d bad=%d\n", (unsigned long long)n_g,
         (int)certified, (int)v, (int)s);
  abel_report_free(r);
  abel_dump_free(d);
  abel_field_free(k);
  return 0;
}
