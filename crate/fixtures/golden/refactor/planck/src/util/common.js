var debug = function () {
  if (!verbose) return;
  console.log.apply(console, arguments);
};
var assert = function (statement, err, log) {
  if (statement) return;
  throw new Error(err);
};
var verbose = false;
export {debug, assert};
