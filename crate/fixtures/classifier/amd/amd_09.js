/* a shim that also mentions module.exports */
define(['exports'], function(exports) {
  exports.ready = true;
});
