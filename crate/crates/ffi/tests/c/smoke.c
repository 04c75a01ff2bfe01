#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include "k0cert.h"

int main(void) {
    const char *doc_text =
        "{\"schema_version\": 1, \"finite_system\": {\"points\": 3, \"permutations\": [[2, 3, 1]]}}";
    K0Document *doc = NULL;
    if (k0c_document_parse(doc_text, &doc) != K0_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", k0c_last_error());
        return 1;
    }
    K0Params params = k0c_params_default();
    K0Verdict kind;
    char *json = NULL;
    if (k0c_check_mf(doc, &params, NULL, &kind, &json) != K0_STATUS_OK) return 2;
    if (kind != K0_VERDICT_CONSISTENT || strstr(json, "CONSISTENT") == NULL) return 3;
    k0c_string_free(json);
    k0c_document_free(doc);
    if (k0c_document_parse("{", &doc) != K0_STATUS_INVALID_DOCUMENT || k0c_last_error() == NULL) return 4;
    puts("ok");
    return 0;
}
