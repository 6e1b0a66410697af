// loads after the dom is ready
define([
  'domReady'
], function(domReady) {
  domReady(function() {});
});
