window.App = window.App || {};
App.start = function() {
  document.title = 'ready';
};
