import { defineConfig } from "vitest/config";

export default defineConfig({
  build: {
    outDir: "dist",
    sourcemap: true,
  },
  server: {
    // During development the API runs separately; in production the Python
    // service serves the built bundle itself, so everything is same-origin.
    proxy: {
      "/sessions": "http://127.0.0.1:8764",
      "/questions": "http://127.0.0.1:8764",
      "/panel": "http://127.0.0.1:8764",
    },
  },
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 60_000,
  },
});
