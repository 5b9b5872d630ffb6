#include <stdio.h>
#include <string.h>
#include "monoidkit.h"

int main(void) {
    MkWorkspace *ws = mk_workspace_new(0);
    MkObject *m = NULL;
    const char *doc = "{\"kind\":\"finite-table\",\"name\":\"idem2\",\"generators\":[\"x\",\"y\"],\"relations\":[\"x^2=x\",\"y^2=y\"]}";
    if (mk_load_json(ws, doc, NULL, &m) != MkStatus_Ok) {
        fprintf(stderr, "%s\n", mk_last_error());
        return 1;
    }
    size_t primes = 0, dim = 0;
    if (mk_mspec(m, &primes, &dim) != MkStatus_Ok || primes != 4 || dim != 2) return 2;
    if (strcmp(mk_object_kind(m), "monoid") != 0) return 3;
    mk_object_free(m);
    mk_workspace_free(ws);
    printf("ok\n");
    return 0;
}
